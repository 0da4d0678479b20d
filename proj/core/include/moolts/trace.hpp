#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "moolts/lts.hpp"

namespace moolts::lts {

struct TraceResult {
  bool equivalent = true;
  // Shortest distinguishing visible trace (empty iff equivalent); the final
  // action is the point of divergence. present_in tells which input admits
  // the trace: 1 for the first, 2 for the second.
  std::vector<std::string> counterexample;
  int present_in = 0;
};

// Weak-trace equivalence: the tau-abstracted visible trace sets coincide.
// Runs a synchronized subset construction; exceeding max_pairs subset pairs
// raises LtsError (determinization is exponential in the worst case).
TraceResult weak_trace_equivalent(const Lts& a, const Lts& b, std::size_t max_pairs = 1'000'000);

}  // namespace moolts::lts
