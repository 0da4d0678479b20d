#include "moolts/explore.hpp"

#include <deque>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>

#include "moolts/action.hpp"
#include "moolts/sem_step.hpp"

namespace moolts::env {

namespace {

using scpp::ActionLabel;
using Pol = scpp::ActionLabel::Polarity;

struct Succ {
  ActionLabel label;
  SystemConfig next;
};

// Successor generation over one configuration. Throws sem::EngineError or
// ConfigError on defects; the driver attaches the trace.
class Stepper {
 public:
  Stepper(const Composition& comp) : comp_(comp) {
    for (std::size_t i = 0; i < comp.parts.size(); ++i) index_[comp.parts[i].proc] = i;
  }

  std::vector<Succ> successors(const SystemConfig& c) const {
    std::vector<Succ> out;
    for (std::size_t i = 0; i < c.parts.size(); ++i) {
      const Participant& p = comp_.parts[i];
      const PartState& s = c.parts[i];
      if (const auto* ps = std::get_if<sem::ProcessState>(&s)) {
        if (ps->is_busy()) process_moves(c, i, p, *ps, out);
      } else if (const auto* st = std::get_if<StubState>(&s)) {
        if (st->busy) stub_moves(c, i, p, *st, out);
      } else if (const auto* fs = std::get_if<FsmState>(&s)) {
        if (fs->pending) fsm_response(c, i, p, *fs, out);
      } else {
        const auto& ts = std::get<TopState>(s);
        if (ts.phase == TopState::Phase::Idle) top_moves(c, i, p, out);
      }
    }
    return out;
  }

 private:
  std::size_t find_part(const scpp::ProcId& proc) const {
    auto it = index_.find(proc);
    if (it == index_.end())
      throw ConfigError("interaction with unknown process '" + proc + "'");
    return it->second;
  }

  // The unique participant blocked on a call to `callee.f`.
  std::size_t find_awaiter(const SystemConfig& c, const scpp::ProcId& callee,
                           const scpp::FuncId& f) const {
    for (std::size_t j = 0; j < c.parts.size(); ++j) {
      if (const auto* ps = std::get_if<sem::ProcessState>(&c.parts[j])) {
        if (ps->mode == sem::ProcessState::Mode::AwaitingReturn && ps->await_callee == callee &&
            ps->await_func == f)
          return j;
      } else if (const auto* ts = std::get_if<TopState>(&c.parts[j])) {
        if (ts->phase == TopState::Phase::Awaiting && comp_.parts[j].top.target == callee &&
            ts->func == f)
          return j;
      }
    }
    throw ConfigError("return from '" + callee + "." + f + "' with no awaiting caller");
  }

  static SystemConfig with(const SystemConfig& c, std::size_t i, PartState s) {
    SystemConfig n = c;
    n.parts[i] = std::move(s);
    return n;
  }

  static SystemConfig with2(const SystemConfig& c, std::size_t i, PartState si, std::size_t j,
                            PartState sj) {
    SystemConfig n = c;
    n.parts[i] = std::move(si);
    n.parts[j] = std::move(sj);
    return n;
  }

  // Scripted drivers advance to the next call; the last completion halts.
  TopState top_advanced(std::size_t j, const TopState& ts) const {
    TopState t;
    t.step = ts.step + 1;
    t.phase = t.step < comp_.parts[j].top_offers.size() ? TopState::Phase::Idle
                                                        : TopState::Phase::Halted;
    return t;
  }

  // Resumes the awaiting side of a completed call.
  PartState resumed_return(const SystemConfig& c, std::size_t j, const scpp::Value& v,
                           const scpp::Lra& lras) const {
    if (const auto* ps = std::get_if<sem::ProcessState>(&c.parts[j]))
      return sem::resume_return(*ps, v, lras);
    const auto& ts = std::get<TopState>(c.parts[j]);
    if (comp_.parts[j].top.scripted()) return top_advanced(j, ts);
    TopState t;
    t.phase = TopState::Phase::Idle;
    return t;
  }

  PartState resumed_throw(const SystemConfig& c, std::size_t j, const scpp::Lra& lras) const {
    if (const auto* ps = std::get_if<sem::ProcessState>(&c.parts[j]))
      return sem::resume_throw(*ps, lras);
    const auto& ts = std::get<TopState>(c.parts[j]);
    if (comp_.parts[j].top.scripted()) return top_advanced(j, ts);
    TopState t;
    t.phase = ts.throws_terminates ? TopState::Phase::Halted : TopState::Phase::Idle;
    return t;
  }

  void process_moves(const SystemConfig& c, std::size_t i, const Participant& p,
                     const sem::ProcessState& ps, std::vector<Succ>& out) const {
    auto mv = sem::step_process(p.def, ps);
    if (!mv) return;
    const sem::Move& m = *mv;
    switch (m.kind) {
      case sem::Move::Kind::Tau:
        out.push_back({ActionLabel::tau(), with(c, i, m.next)});
        return;

      case sem::Move::Kind::CallOut: {
        std::size_t j = find_part(m.peer);
        const Participant& pj = comp_.parts[j];
        const PartState& sj = c.parts[j];
        auto label = ActionLabel::call_func(Pol::Comm, m.peer, m.func, m.args, m.lras);
        switch (pj.kind) {
          case Participant::Kind::Transformed: {
            const auto& psj = std::get<sem::ProcessState>(sj);
            if (!psj.is_stable()) return;  // callee busy or awaiting: blocked
            out.push_back(
                {label, with2(c, i, m.next, j,
                              sem::respond_call(pj.def, psj, m.func, m.args, m.lras))});
            return;
          }
          case Participant::Kind::Stub: {
            if (std::get<StubState>(sj).busy) return;
            if (!pj.stub.return_bounds.count(m.func))
              throw ConfigError("stub '" + pj.proc + "' has no return bound for '" + m.func +
                                "'");
            out.push_back({label, with2(c, i, m.next, j,
                                        stub_accept_call(pj.stub, m.func, m.lras))});
            return;
          }
          case Participant::Kind::Fsm: {
            const auto& fs = std::get<FsmState>(sj);
            if (fs.pending) return;
            for (const FsmTransition* t : fsm_match_call(pj.fsm, fs.node, m.func, m.args)) {
              FsmState nf;
              nf.node = fs.node;
              nf.pending = true;
              nf.next_node = t->to;
              nf.pending_throw = t->throws;
              nf.value = t->return_value;
              nf.func = m.func;
              nf.lras = m.lras;
              out.push_back({label, with2(c, i, m.next, j, std::move(nf))});
            }
            return;  // no match: blocked
          }
          case Participant::Kind::Top:
            throw ConfigError("call to the top-level interface process '" + pj.proc + "'");
        }
        return;
      }

      case sem::Move::Kind::LoadOut: {
        std::size_t j = find_part(m.peer);
        const Participant& pj = comp_.parts[j];
        const PartState& sj = c.parts[j];
        switch (pj.kind) {
          case Participant::Kind::Transformed: {
            const auto& psj = std::get<sem::ProcessState>(sj);
            if (!psj.is_stable()) return;
            scpp::Value v = sem::respond_load(psj, m.field);
            out.push_back({ActionLabel::load(Pol::Comm, m.peer, m.field, v),
                           with(c, i, sem::resume_load(ps, v))});
            return;
          }
          case Participant::Kind::Stub: {
            auto it = pj.stub.load_bounds.find(m.field);
            if (it == pj.stub.load_bounds.end())
              throw ConfigError("stub '" + pj.proc + "' has no load bound for '" + m.field + "'");
            for (const scpp::Value& v : enumerate_bound(it->second, comp_.categories))
              out.push_back({ActionLabel::load(Pol::Comm, m.peer, m.field, v),
                             with(c, i, sem::resume_load(ps, v))});
            return;
          }
          case Participant::Kind::Fsm: {
            const auto& fs = std::get<FsmState>(sj);
            for (const FsmTransition* t : fsm_match_load(pj.fsm, fs.node, m.field)) {
              FsmState nf;
              nf.node = t->to;
              out.push_back({ActionLabel::load(Pol::Comm, m.peer, m.field, *t->value),
                             with2(c, i, sem::resume_load(ps, *t->value), j, std::move(nf))});
            }
            return;
          }
          case Participant::Kind::Top:
            throw ConfigError("field access on the top-level interface process '" + pj.proc +
                              "'");
        }
        return;
      }

      case sem::Move::Kind::StoreOut: {
        std::size_t j = find_part(m.peer);
        const Participant& pj = comp_.parts[j];
        const PartState& sj = c.parts[j];
        auto label = ActionLabel::store(Pol::Comm, m.peer, m.field, m.value);
        switch (pj.kind) {
          case Participant::Kind::Transformed: {
            const auto& psj = std::get<sem::ProcessState>(sj);
            if (!psj.is_stable()) return;
            out.push_back(
                {label, with2(c, i, m.next, j, sem::respond_store(psj, m.field, m.value))});
            return;
          }
          case Participant::Kind::Stub:
            // Stubs absorb stores.
            out.push_back({label, with(c, i, m.next)});
            return;
          case Participant::Kind::Fsm: {
            const auto& fs = std::get<FsmState>(sj);
            for (const FsmTransition* t : fsm_match_store(pj.fsm, fs.node, m.field, m.value)) {
              FsmState nf;
              nf.node = t->to;
              out.push_back({label, with2(c, i, m.next, j, std::move(nf))});
            }
            return;
          }
          case Participant::Kind::Top:
            throw ConfigError("field access on the top-level interface process '" + pj.proc +
                              "'");
        }
        return;
      }

      case sem::Move::Kind::ReturnOut: {
        std::size_t j = find_awaiter(c, p.proc, m.func);
        out.push_back({ActionLabel::return_func(Pol::Comm, p.proc, m.func, m.value, m.lras),
                       with2(c, i, m.next, j, resumed_return(c, j, m.value, m.lras))});
        return;
      }

      case sem::Move::Kind::ThrowOut: {
        std::size_t j = find_awaiter(c, p.proc, m.func);
        out.push_back({ActionLabel::throw_func(Pol::Comm, p.proc, m.func, m.lras),
                       with2(c, i, m.next, j, resumed_throw(c, j, m.lras))});
        return;
      }
    }
  }

  void stub_moves(const SystemConfig& c, std::size_t i, const Participant& p, const StubState& st,
                  std::vector<Succ>& out) const {
    std::size_t j = find_awaiter(c, p.proc, st.func);
    const BoundedType& bound = p.stub.return_bounds.at(st.func);
    for (const scpp::Value& v : enumerate_bound(bound, comp_.categories))
      out.push_back({ActionLabel::return_func(Pol::Comm, p.proc, st.func, v, st.lras),
                     with2(c, i, StubState{}, j, resumed_return(c, j, v, st.lras))});
    auto ct = p.stub.can_throw.find(st.func);
    if (ct != p.stub.can_throw.end() && ct->second)
      out.push_back({ActionLabel::throw_func(Pol::Comm, p.proc, st.func, st.lras),
                     with2(c, i, StubState{}, j, resumed_throw(c, j, st.lras))});
  }

  void fsm_response(const SystemConfig& c, std::size_t i, const Participant& p, const FsmState& fs,
                    std::vector<Succ>& out) const {
    std::size_t j = find_awaiter(c, p.proc, fs.func);
    FsmState nf;
    nf.node = fs.next_node;
    if (fs.pending_throw) {
      out.push_back({ActionLabel::throw_func(Pol::Comm, p.proc, fs.func, fs.lras),
                     with2(c, i, std::move(nf), j, resumed_throw(c, j, fs.lras))});
    } else {
      out.push_back({ActionLabel::return_func(Pol::Comm, p.proc, fs.func, fs.value, fs.lras),
                     with2(c, i, std::move(nf), j, resumed_return(c, j, fs.value, fs.lras))});
    }
  }

  void top_moves(const SystemConfig& c, std::size_t i, const Participant& p,
                 std::vector<Succ>& out) const {
    std::size_t t = find_part(p.top.target);
    const Participant& pt = comp_.parts[t];
    if (pt.kind != Participant::Kind::Transformed)
      throw ConfigError("top-level interface target '" + p.top.target +
                        "' is not a transformed class instance");
    const auto& pst = std::get<sem::ProcessState>(c.parts[t]);
    if (!pst.is_stable()) return;
    const auto& ts = std::get<TopState>(c.parts[i]);

    if (p.top.scripted()) {
      if (ts.step >= p.top_offers.size()) return;
      const TopCallOffer& offer = p.top_offers[ts.step];
      TopState nt = ts;
      nt.phase = TopState::Phase::Awaiting;
      nt.func = offer.func;
      out.push_back(
          {ActionLabel::call_func(Pol::Comm, p.top.target, offer.func, offer.args, offer.lras),
           with2(c, t, sem::respond_call(pt.def, pst, offer.func, offer.args, offer.lras), i,
                 std::move(nt))});
      return;
    }

    for (const TopCallOffer& offer : p.top_offers) {
      TopState nt;
      nt.phase = TopState::Phase::Awaiting;
      nt.func = offer.func;
      nt.throws_terminates = offer.throws_terminates;
      out.push_back(
          {ActionLabel::call_func(Pol::Comm, p.top.target, offer.func, offer.args, offer.lras),
           with2(c, t, sem::respond_call(pt.def, pst, offer.func, offer.args, offer.lras), i,
                 std::move(nt))});
    }
    for (const TopFieldSpec& fld : p.top.fields) {
      if (fld.loadable) {
        scpp::Value v = sem::respond_load(pst, fld.field);
        out.push_back({ActionLabel::load(Pol::Comm, p.top.target, fld.field, v), c});
      }
      if (fld.store_bound) {
        for (const scpp::Value& v : enumerate_bound(*fld.store_bound, comp_.categories))
          out.push_back({ActionLabel::store(Pol::Comm, p.top.target, fld.field, v),
                         with(c, t, sem::respond_store(pst, fld.field, v))});
      }
    }
  }

  const Composition& comp_;
  std::map<scpp::ProcId, std::size_t> index_;
};

// Run-to-completion sanity: at most one participant may be mid-task.
bool rtc_ok(const SystemConfig& c) {
  int active = 0;
  for (const auto& s : c.parts) {
    if (const auto* ps = std::get_if<sem::ProcessState>(&s)) {
      if (ps->is_busy()) ++active;
    } else if (const auto* st = std::get_if<StubState>(&s)) {
      if (st->busy) ++active;
    } else if (const auto* fs = std::get_if<FsmState>(&s)) {
      if (fs->pending) ++active;
    }
  }
  return active <= 1;
}

std::size_t max_frame_depth(const SystemConfig& c) {
  std::size_t d = 0;
  for (const auto& s : c.parts)
    if (const auto* ps = std::get_if<sem::ProcessState>(&s))
      if (ps->frames.size() > d) d = ps->frames.size();
  return d;
}

}  // namespace

std::uint64_t SystemConfig::hash() const {
  std::uint64_t h = 0xc0f1;
  for (const auto& p : parts) h = scpp::hash_mix(h, part_hash(p));
  return h;
}

ExploreResult explore(const Composition& comp, const Limits& limits) {
  if (comp.parts.empty()) throw ConfigError("composition has no participants");

  Stepper stepper(comp);
  ExploreResult res;

  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  std::vector<std::pair<std::uint32_t, std::string>> parent;  // (pred state, label)
  std::deque<std::uint32_t> queue;

  auto trace_to = [&](std::uint32_t s) {
    std::vector<std::string> labels;
    while (s != 0) {
      labels.push_back(parent[s].second);
      s = parent[s].first;
    }
    if (labels.empty()) return std::string(" (at the initial configuration)");
    std::string t = "\n  trace:";
    for (auto it = labels.rbegin(); it != labels.rend(); ++it) t += "\n    " + *it;
    return t;
  };

  auto intern = [&](SystemConfig cfg, std::uint32_t from,
                    const std::string& label) -> std::uint32_t {
    std::uint64_t h = cfg.hash();
    auto& bucket = buckets[h];
    for (std::uint32_t id : bucket)
      if (res.configs[id] == cfg) return id;
    auto id = static_cast<std::uint32_t>(res.configs.size());
    if (res.configs.size() >= limits.max_states)
      throw ExploreError("state limit exceeded (" + std::to_string(limits.max_states) +
                         " states)");
    if (!rtc_ok(cfg))
      throw ExploreError("internal error: run-to-completion violated" +
                         (id ? trace_to(from) + "\n    " + label : std::string()));
    if (max_frame_depth(cfg) > limits.max_frames)
      throw ExploreError("call depth limit exceeded (" + std::to_string(limits.max_frames) +
                         " frames); unbounded recursion?" + trace_to(from) + "\n    " + label);
    bucket.push_back(id);
    res.configs.push_back(std::move(cfg));
    parent.emplace_back(from, label);
    queue.push_back(id);
    return id;
  };

  {
    SystemConfig init;
    init.parts.reserve(comp.parts.size());
    for (const auto& p : comp.parts) init.parts.push_back(initial_part_state(p));
    std::uint64_t h = init.hash();
    buckets[h].push_back(0);
    res.configs.push_back(std::move(init));
    parent.emplace_back(0, "");
    queue.push_back(0);
  }

  while (!queue.empty()) {
    std::uint32_t s = queue.front();
    queue.pop_front();
    std::vector<Succ> succs;
    try {
      succs = stepper.successors(res.configs[s]);
    } catch (const sem::EngineError& e) {
      throw ExploreError(std::string(e.what()) + trace_to(s));
    } catch (const ConfigError& e) {
      throw ExploreError(std::string(e.what()) + trace_to(s));
    }
    for (auto& sc : succs) {
      std::string label = scpp::render_action(sc.label);
      std::uint32_t to = intern(std::move(sc.next), s, label);
      res.lts.transitions.push_back({s, std::move(label), to});
      if (res.lts.transitions.size() > limits.max_transitions)
        throw ExploreError("transition limit exceeded (" + std::to_string(limits.max_transitions) +
                           " transitions)");
    }
  }

  res.lts.num_states = static_cast<std::uint32_t>(res.configs.size());
  res.lts.initial = 0;
  res.lts.normalize();
  return res;
}

}  // namespace moolts::env
