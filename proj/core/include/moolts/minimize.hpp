#pragma once

#include <cstdint>
#include <vector>

#include "moolts/lts.hpp"

namespace moolts::lts {

// Coarsest partitions, one dense block id per state (numbering arbitrary).
std::vector<std::uint32_t> strong_partition(const Lts& l);
std::vector<std::uint32_t> branching_partition(const Lts& l);

// Quotients with canonical state numbering (breadth-first from the initial
// block, neighbors in label order). Unreachable blocks are dropped. The
// branching quotient drops inert tau self-loops unless keep_tau_loops.
Lts minimize_strong_bisim(const Lts& l);
Lts minimize_branching_bisim(const Lts& l, bool keep_tau_loops = false);

// Verdicts via partitioning the disjoint union.
bool strong_bisim_equivalent(const Lts& a, const Lts& b);
bool branching_bisim_equivalent(const Lts& a, const Lts& b);

}  // namespace moolts::lts
