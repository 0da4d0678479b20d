#include "moolts/trace.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <utility>

namespace moolts::lts {

namespace {

using StateSet = std::vector<std::uint32_t>;  // sorted, unique

struct Nfa {
  std::vector<std::vector<std::uint32_t>> tau_out;
  std::vector<std::vector<std::pair<std::string, std::uint32_t>>> vis_out;

  explicit Nfa(const Lts& l) : tau_out(l.num_states), vis_out(l.num_states) {
    for (const auto& t : l.transitions) {
      if (t.label == kTau)
        tau_out[t.from].push_back(t.to);
      else
        vis_out[t.from].emplace_back(t.label, t.to);
    }
  }

  StateSet closure(StateSet s) const {
    std::set<std::uint32_t> seen(s.begin(), s.end());
    std::deque<std::uint32_t> queue(s.begin(), s.end());
    while (!queue.empty()) {
      std::uint32_t u = queue.front();
      queue.pop_front();
      for (std::uint32_t v : tau_out[u])
        if (seen.insert(v).second) queue.push_back(v);
    }
    return StateSet(seen.begin(), seen.end());
  }

  // Visible labels enabled from the set, each with its (pre-closure) target set.
  std::map<std::string, std::set<std::uint32_t>> moves(const StateSet& s) const {
    std::map<std::string, std::set<std::uint32_t>> m;
    for (std::uint32_t u : s)
      for (const auto& [a, v] : vis_out[u]) m[a].insert(v);
    return m;
  }
};

}  // namespace

TraceResult weak_trace_equivalent(const Lts& a, const Lts& b, std::size_t max_pairs) {
  Nfa na(a), nb(b);

  using Pair = std::pair<StateSet, StateSet>;
  std::map<Pair, std::uint32_t> seen;
  std::vector<std::pair<std::uint32_t, std::string>> parent;  // (pred pair id, label)
  std::vector<Pair> pairs;
  std::deque<std::uint32_t> queue;

  auto trace_to = [&](std::uint32_t id, const std::string& last) {
    std::vector<std::string> t;
    t.push_back(last);
    while (id != 0) {
      t.push_back(parent[id].second);
      id = parent[id].first;
    }
    std::reverse(t.begin(), t.end());
    return t;
  };

  Pair init{na.closure({a.num_states ? a.initial : 0}),
            nb.closure({b.num_states ? b.initial : 0})};
  if (a.num_states == 0) init.first.clear();
  if (b.num_states == 0) init.second.clear();
  seen.emplace(init, 0);
  pairs.push_back(init);
  parent.emplace_back(0, "");
  queue.push_back(0);

  while (!queue.empty()) {
    std::uint32_t id = queue.front();
    queue.pop_front();
    auto ma = na.moves(pairs[id].first);
    auto mb = nb.moves(pairs[id].second);

    // Label sets must coincide; the first divergence (BFS order) yields a
    // shortest counterexample. Traces only the first input admits are
    // preferred (the usual regression question: what did the edit lose?),
    // lexicographically least first.
    for (const auto& [label, tos] : ma) {
      if (!mb.count(label)) {
        TraceResult r;
        r.equivalent = false;
        r.counterexample = trace_to(id, label);
        r.present_in = 1;
        return r;
      }
    }
    for (const auto& [label, btos] : mb) {
      auto ia = ma.find(label);
      if (ia == ma.end()) {
        TraceResult r;
        r.equivalent = false;
        r.counterexample = trace_to(id, label);
        r.present_in = 2;
        return r;
      }
      // Shared label: follow it.
      Pair next{na.closure(StateSet(ia->second.begin(), ia->second.end())),
                nb.closure(StateSet(btos.begin(), btos.end()))};
      auto [it, fresh] = seen.emplace(std::move(next), static_cast<std::uint32_t>(pairs.size()));
      if (fresh) {
        if (pairs.size() >= max_pairs)
          throw LtsError("weak-trace check: determinization limit exceeded (" +
                         std::to_string(max_pairs) + " subset pairs)");
        pairs.push_back(it->first);
        parent.emplace_back(id, label);
        queue.push_back(it->second);
      }
    }
  }
  return TraceResult{};
}

}  // namespace moolts::lts
