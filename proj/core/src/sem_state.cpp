#include "moolts/sem_state.hpp"

#include <utility>

namespace moolts::sem {

using scpp::Lra;
using scpp::Value;
using scpp::VarId;

const Value& sigma_get(const Sigma& s, const VarId& id) {
  static const Value kVoid;
  auto it = s.find(id);
  return it == s.end() ? kVoid : it->second;
}

void sigma_set(Sigma& s, const VarId& id, Value v) {
  if (v.is(Value::Kind::Void)) {
    s.erase(id);
  } else {
    s.insert_or_assign(id, std::move(v));
  }
}

Lra make_lras(const std::vector<VarId>& ids, const Sigma& sigma) {
  Lra out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.emplace_back(id, sigma_get(sigma, id));
  return out;
}

const Value& read_lra(const VarId& id, const Lra& l) {
  for (const auto& [key, v] : l)
    if (key == id) return v;
  throw EngineError("dangling local reference '" + id + "'");
}

Lra update_lra(const VarId& id, const Value& v, Lra l) {
  for (auto& [key, held] : l) {
    if (key == id) {
      held = v;
      return l;
    }
  }
  return l;  // no match: unchanged
}

Sigma ret_refs_sigma(const Lra& l, Sigma sigma) {
  // Right-to-left so the first entry wins on duplicate keys.
  for (auto it = l.rbegin(); it != l.rend(); ++it) {
    if (sigma_get(sigma, it->first).is_reference()) continue;
    sigma_set(sigma, it->first, it->second);
  }
  return sigma;
}

Lra ret_refs_r(const Lra& l, const Sigma& sigma, Lra outer) {
  for (auto it = l.rbegin(); it != l.rend(); ++it) {
    const Value& bound = sigma_get(sigma, it->first);
    if (bound.is(Value::Kind::LocalRef)) outer = update_lra(bound.var(), it->second, std::move(outer));
  }
  return outer;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t hash_str(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t hash_sigma(const Sigma& s) {
  std::uint64_t h = 17;
  for (const auto& [id, v] : s) h = mix(mix(h, hash_str(id)), v.hash());
  return h;
}

std::uint64_t hash_lra(const Lra& l) {
  std::uint64_t h = 23;
  for (const auto& [id, v] : l) h = mix(mix(h, hash_str(id)), v.hash());
  return h;
}

}  // namespace

std::uint64_t ProcessState::hash() const {
  std::uint64_t h = hash_str(proc);
  h = mix(h, static_cast<std::uint64_t>(mode));
  h = mix(h, hash_sigma(sigma_g));
  if (mode == Mode::Stable) return h;
  h = mix(h, hash_str(external));
  for (const auto& f : frames) {
    h = mix(h, scpp::hash_program(f.prog));
    h = mix(h, f.result_var ? hash_str(*f.result_var) : 0x5bd1e995ULL);
    h = mix(h, hash_sigma(f.sigma_l));
    h = mix(h, hash_lra(f.refs));
  }
  if (mode == Mode::AwaitingReturn) {
    h = mix(h, hash_str(await_callee));
    h = mix(h, hash_str(await_func));
    h = mix(h, await_result ? hash_str(*await_result) : 0xc2b2ae35ULL);
  }
  return h;
}

bool operator==(const ProcessState& a, const ProcessState& b) {
  if (a.mode != b.mode || a.proc != b.proc || a.sigma_g != b.sigma_g) return false;
  if (a.mode == ProcessState::Mode::Stable) return true;
  if (a.external != b.external || a.frames.size() != b.frames.size()) return false;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    const StackFrame& x = a.frames[i];
    const StackFrame& y = b.frames[i];
    if (x.result_var != y.result_var || x.sigma_l != y.sigma_l || x.refs != y.refs) return false;
    if (x.prog.size() != y.prog.size()) return false;
    for (std::size_t j = 0; j < x.prog.size(); ++j)
      if (x.prog[j] != y.prog[j]) return false;
  }
  if (a.mode == ProcessState::Mode::AwaitingReturn &&
      (a.await_callee != b.await_callee || a.await_func != b.await_func ||
       a.await_result != b.await_result))
    return false;
  return true;
}

ProcessState initial_state(scpp::ProcId proc, Sigma sigma_g) {
  ProcessState ps;
  ps.proc = std::move(proc);
  for (auto& [id, v] : sigma_g) sigma_set(ps.sigma_g, id, v);
  return ps;
}

}  // namespace moolts::sem
