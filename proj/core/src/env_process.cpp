#include "moolts/env_process.hpp"

#include <cstddef>
#include <string>
#include <utility>

namespace moolts::env {

namespace {

using scpp::hash_mix;
using scpp::hash_str;

std::uint64_t hash_lra(const scpp::Lra& l) {
  std::uint64_t h = 0x51ab;
  for (const auto& [id, v] : l) {
    h = hash_mix(h, hash_str(id));
    h = hash_mix(h, v.hash());
  }
  return h;
}

}  // namespace

std::uint64_t part_hash(const PartState& s) {
  std::uint64_t h = 0xbeef + s.index();
  if (const auto* ps = std::get_if<sem::ProcessState>(&s)) {
    h = hash_mix(h, ps->hash());
  } else if (const auto* st = std::get_if<StubState>(&s)) {
    h = hash_mix(h, st->busy ? 2u : 1u);
    h = hash_mix(h, hash_str(st->func));
    h = hash_mix(h, hash_lra(st->lras));
  } else if (const auto* fs = std::get_if<FsmState>(&s)) {
    h = hash_mix(h, hash_str(fs->node));
    h = hash_mix(h, fs->pending ? 2u : 1u);
    h = hash_mix(h, hash_str(fs->next_node));
    h = hash_mix(h, fs->pending_throw ? 2u : 1u);
    h = hash_mix(h, fs->value.hash());
    h = hash_mix(h, hash_str(fs->func));
    h = hash_mix(h, hash_lra(fs->lras));
  } else {
    const auto& ts = std::get<TopState>(s);
    h = hash_mix(h, static_cast<std::uint64_t>(ts.phase));
    h = hash_mix(h, hash_str(ts.func));
    h = hash_mix(h, ts.throws_terminates ? 2u : 1u);
    h = hash_mix(h, ts.step);
  }
  return h;
}

PartState initial_part_state(const Participant& p) {
  switch (p.kind) {
    case Participant::Kind::Transformed:
      return sem::initial_state(p.proc, p.initial_sigma_g);
    case Participant::Kind::Stub:
      return StubState{};
    case Participant::Kind::Fsm: {
      FsmState s;
      s.node = p.fsm.initial;
      return s;
    }
    case Participant::Kind::Top:
      return TopState{};
  }
  throw ConfigError("corrupt participant kind");
}

StubState stub_accept_call(const StubSpec&, const scpp::FuncId& f, const scpp::Lra& lras) {
  StubState s;
  s.busy = true;
  s.func = f;
  s.lras = lras;
  return s;
}

std::vector<const FsmTransition*> fsm_match_call(const CustomFsm& fsm, const std::string& node,
                                                 const scpp::FuncId& f,
                                                 const std::vector<scpp::Value>& vs) {
  std::vector<const FsmTransition*> out;
  for (const auto& t : fsm.transitions) {
    if (t.trigger != FsmTransition::Trigger::Call || t.from != node || t.func != f) continue;
    if (t.args && *t.args != vs) continue;
    out.push_back(&t);
  }
  return out;
}

std::vector<const FsmTransition*> fsm_match_load(const CustomFsm& fsm, const std::string& node,
                                                 const scpp::VarId& field) {
  std::vector<const FsmTransition*> out;
  for (const auto& t : fsm.transitions) {
    if (t.trigger != FsmTransition::Trigger::Load || t.from != node || t.field != field) continue;
    out.push_back(&t);
  }
  return out;
}

std::vector<const FsmTransition*> fsm_match_store(const CustomFsm& fsm, const std::string& node,
                                                  const scpp::VarId& field, const scpp::Value& v) {
  std::vector<const FsmTransition*> out;
  for (const auto& t : fsm.transitions) {
    if (t.trigger != FsmTransition::Trigger::Store || t.from != node || t.field != field) continue;
    if (t.value && *t.value != v) continue;
    out.push_back(&t);
  }
  return out;
}

void validate_fsm(const CustomFsm& fsm) {
  auto known = [&](const std::string& s) {
    for (const auto& n : fsm.states)
      if (n == s) return true;
    return false;
  };
  if (fsm.states.empty()) throw ConfigError("process '" + fsm.proc + "': FSM declares no states");
  if (!known(fsm.initial))
    throw ConfigError("process '" + fsm.proc + "': initial state '" + fsm.initial +
                      "' is not declared");
  for (const auto& t : fsm.transitions) {
    if (!known(t.from))
      throw ConfigError("process '" + fsm.proc + "': transition from undeclared state '" + t.from +
                        "'");
    if (!known(t.to))
      throw ConfigError("process '" + fsm.proc + "': transition to undeclared state '" + t.to +
                        "'");
    if (t.trigger == FsmTransition::Trigger::Load && !t.value)
      throw ConfigError("process '" + fsm.proc + "': load transition for '" + t.field +
                        "' carries no value");
  }
}

void validate_stub(const StubSpec& spec) {
  for (const auto& [f, flag] : spec.can_throw) {
    if (flag && !spec.return_bounds.count(f))
      throw ConfigError("process '" + spec.proc + "': canThrow set for '" + f +
                        "' which has no return bound");
  }
}

std::vector<TopCallOffer> build_top_offers(const TopInterfaceSpec& spec,
                                           const std::map<scpp::FuncId, std::vector<bool>>& by_ref,
                                           const Categories& categories) {
  std::vector<TopCallOffer> offers;
  if (spec.scripted()) {
    // One offer per sequence position, arguments fixed.
    for (std::size_t s = 0; s < spec.sequence.size(); ++s) {
      const TopScriptCall& call = spec.sequence[s];
      auto it = by_ref.find(call.func);
      if (it == by_ref.end())
        throw ConfigError("top-level script calls unknown function '" + call.func + "'");
      const auto& refs = it->second;
      if (refs.size() != call.args.size())
        throw ConfigError("top-level script call " + std::to_string(s + 1) + ": '" + call.func +
                          "' takes " + std::to_string(refs.size()) + " arguments, got " +
                          std::to_string(call.args.size()));
      TopCallOffer offer;
      offer.func = call.func;
      for (std::size_t i = 0; i < call.args.size(); ++i) {
        if (refs[i]) {
          scpp::VarId slot = "__top" + std::to_string(i);
          offer.args.push_back(scpp::Value::local_ref(slot));
          offer.lras.emplace_back(std::move(slot), call.args[i]);
        } else {
          offer.args.push_back(call.args[i]);
        }
      }
      offers.push_back(std::move(offer));
    }
    return offers;
  }
  for (const auto& fn : spec.funcs) {
    auto it = by_ref.find(fn.func);
    if (it == by_ref.end())
      throw ConfigError("top interface drives unknown function '" + fn.func + "'");
    const auto& refs = it->second;
    if (refs.size() != fn.arg_bounds.size())
      throw ConfigError("top interface bound for '" + fn.func + "' has " +
                        std::to_string(fn.arg_bounds.size()) + " argument bounds, function takes " +
                        std::to_string(refs.size()));

    std::vector<std::vector<scpp::Value>> domains;
    domains.reserve(fn.arg_bounds.size());
    for (std::size_t i = 0; i < fn.arg_bounds.size(); ++i) {
      try {
        domains.push_back(enumerate_bound(fn.arg_bounds[i], categories));
      } catch (const ConfigError& e) {
        throw ConfigError("top interface, argument " + std::to_string(i + 1) + " of '" + fn.func +
                          "': " + e.what());
      }
    }

    // Odometer over the domains, leftmost argument varying slowest.
    std::vector<std::size_t> idx(domains.size(), 0);
    for (;;) {
      TopCallOffer offer;
      offer.func = fn.func;
      offer.throws_terminates = fn.throws_terminates;
      for (std::size_t i = 0; i < domains.size(); ++i) {
        const scpp::Value& v = domains[i][idx[i]];
        if (refs[i]) {
          scpp::VarId slot = "__top" + std::to_string(i);
          offer.args.push_back(scpp::Value::local_ref(slot));
          offer.lras.emplace_back(std::move(slot), v);
        } else {
          offer.args.push_back(v);
        }
      }
      offers.push_back(std::move(offer));

      std::size_t k = domains.size();
      while (k > 0) {
        --k;
        if (++idx[k] < domains[k].size()) break;
        idx[k] = 0;
        if (k == 0) {
          k = domains.size() + 1;  // odometer wrapped: done
          break;
        }
      }
      if (domains.empty() || k > domains.size()) break;
    }
  }
  return offers;
}

}  // namespace moolts::env
