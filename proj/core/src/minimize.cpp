#include "moolts/minimize.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <utility>

namespace moolts::lts {

namespace {

// Label-interned edge list, grouped by source state.
struct Graph {
  std::vector<std::string> labels;               // id -> text
  std::int64_t tau = -1;                         // label id of "tau", -1 if absent
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out;  // s -> (label, to)

  explicit Graph(const Lts& l) : out(l.num_states) {
    std::map<std::string, std::uint32_t> intern;
    for (const auto& t : l.transitions) {
      auto [it, fresh] = intern.emplace(t.label, static_cast<std::uint32_t>(labels.size()));
      if (fresh) labels.push_back(t.label);
      out[t.from].emplace_back(it->second, t.to);
    }
    auto it = intern.find(kTau);
    if (it != intern.end()) tau = it->second;
  }
};

using Sig = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (label, block), sorted

void canon(Sig& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

// Splits every block by signature until stable. `signature` computes sig(s)
// against the current partition.
template <typename SigFn>
std::vector<std::uint32_t> refine(std::size_t n, SigFn&& signature) {
  std::vector<std::uint32_t> blocks(n, 0);
  std::size_t count = n ? 1 : 0;
  for (;;) {
    std::map<std::pair<std::uint32_t, Sig>, std::uint32_t> split;
    std::vector<std::uint32_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      auto key = std::make_pair(blocks[s], signature(blocks, static_cast<std::uint32_t>(s)));
      auto [it, fresh] = split.emplace(std::move(key), static_cast<std::uint32_t>(split.size()));
      (void)fresh;
      next[s] = it->second;
    }
    if (split.size() == count) return blocks;
    count = split.size();
    blocks = std::move(next);
  }
}

std::vector<std::uint32_t> strong_blocks(const Graph& g) {
  return refine(g.out.size(), [&](const std::vector<std::uint32_t>& blocks, std::uint32_t s) {
    Sig sig;
    sig.reserve(g.out[s].size());
    for (auto [a, t] : g.out[s]) sig.emplace_back(a, blocks[t]);
    canon(sig);
    return sig;
  });
}

std::vector<std::uint32_t> branching_blocks(const Graph& g) {
  std::vector<std::uint32_t> mark(g.out.size(), 0);  // visit stamps for the inert closure
  std::uint32_t stamp = 0;
  std::vector<std::uint32_t> stack;

  return refine(g.out.size(), [&](const std::vector<std::uint32_t>& blocks, std::uint32_t s) {
    // sig(s): observable steps reachable through inert tau paths, i.e. tau
    // steps that stay inside the current block of s.
    Sig sig;
    ++stamp;
    stack.assign(1, s);
    mark[s] = stamp;
    while (!stack.empty()) {
      std::uint32_t u = stack.back();
      stack.pop_back();
      for (auto [a, t] : g.out[u]) {
        bool inert = static_cast<std::int64_t>(a) == g.tau && blocks[t] == blocks[s];
        if (inert) {
          if (mark[t] != stamp) {
            mark[t] = stamp;
            stack.push_back(t);
          }
        } else {
          sig.emplace_back(a, blocks[t]);
        }
      }
    }
    canon(sig);
    return sig;
  });
}

// Renumbers blocks breadth-first from the initial block (neighbors in label
// order) and rebuilds the transition list; unreachable blocks vanish.
Lts quotient(const Lts& l, const std::vector<std::uint32_t>& blocks, bool drop_tau_self_loops) {
  // Per-block sorted outgoing (label, target block), self tau-loops filtered.
  std::map<std::uint32_t, std::vector<std::pair<std::string, std::uint32_t>>> edges;
  for (const auto& t : l.transitions) {
    std::uint32_t b = blocks[t.from], b2 = blocks[t.to];
    if (drop_tau_self_loops && b == b2 && t.label == kTau) continue;
    edges[b].emplace_back(t.label, b2);
  }
  for (auto& [b, es] : edges) {
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
  }

  std::map<std::uint32_t, std::uint32_t> renumber;
  std::deque<std::uint32_t> queue;
  std::uint32_t b0 = l.num_states ? blocks[l.initial] : 0;
  renumber[b0] = 0;
  queue.push_back(b0);
  Lts q;
  while (!queue.empty()) {
    std::uint32_t b = queue.front();
    queue.pop_front();
    auto it = edges.find(b);
    if (it == edges.end()) continue;
    for (const auto& [label, b2] : it->second) {
      auto [rit, fresh] = renumber.emplace(b2, static_cast<std::uint32_t>(renumber.size()));
      if (fresh) queue.push_back(b2);
      q.transitions.push_back({renumber[b], label, rit->second});
    }
  }
  q.num_states = static_cast<std::uint32_t>(renumber.size());
  q.initial = 0;
  q.normalize();
  return q;
}

Lts disjoint_union(const Lts& a, const Lts& b) {
  Lts u;
  u.num_states = a.num_states + b.num_states;
  u.initial = a.initial;
  u.transitions = a.transitions;
  for (const auto& t : b.transitions)
    u.transitions.push_back({t.from + a.num_states, t.label, t.to + a.num_states});
  return u;
}

}  // namespace

std::vector<std::uint32_t> strong_partition(const Lts& l) { return strong_blocks(Graph(l)); }

std::vector<std::uint32_t> branching_partition(const Lts& l) { return branching_blocks(Graph(l)); }

Lts minimize_strong_bisim(const Lts& l) { return quotient(l, strong_partition(l), false); }

Lts minimize_branching_bisim(const Lts& l, bool keep_tau_loops) {
  return quotient(l, branching_partition(l), !keep_tau_loops);
}

bool strong_bisim_equivalent(const Lts& a, const Lts& b) {
  if (a.num_states == 0 || b.num_states == 0) return a.num_states == b.num_states;
  auto blocks = strong_partition(disjoint_union(a, b));
  return blocks[a.initial] == blocks[a.num_states + b.initial];
}

bool branching_bisim_equivalent(const Lts& a, const Lts& b) {
  if (a.num_states == 0 || b.num_states == 0) return a.num_states == b.num_states;
  auto blocks = branching_partition(disjoint_union(a, b));
  return blocks[a.initial] == blocks[a.num_states + b.initial];
}

}  // namespace moolts::lts
