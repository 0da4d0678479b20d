#include <vector>

#include "doctest.h"
#include "moolts/lts.hpp"
#include "moolts/trace.hpp"

using namespace moolts::lts;

namespace {

Lts make(std::uint32_t n, std::initializer_list<Transition> ts) {
  Lts l;
  l.num_states = n;
  l.transitions = ts;
  l.normalize();
  return l;
}

}  // namespace

TEST_CASE("weak traces ignore tau structure entirely") {
  Lts direct = make(3, {{0, "a", 1}, {1, "b", 2}});
  Lts padded = make(6, {{0, "tau", 1}, {1, "a", 2}, {2, "tau", 3}, {3, "tau", 4}, {4, "b", 5}});
  TraceResult r = weak_trace_equivalent(direct, padded);
  CHECK(r.equivalent);
  CHECK(r.counterexample.empty());
}

TEST_CASE("weak traces ignore branching structure (unlike bisimulation)") {
  // a·(b+c) versus a·b + a·c: trace-equivalent, not bisimilar.
  Lts joined = make(4, {{0, "a", 1}, {1, "b", 2}, {1, "c", 3}});
  Lts split = make(5, {{0, "a", 1}, {0, "a", 2}, {1, "b", 3}, {2, "c", 4}});
  CHECK(weak_trace_equivalent(joined, split).equivalent);
}

TEST_CASE("a missing continuation is reported with the shortest witness") {
  Lts longer = make(4, {{0, "a", 1}, {1, "b", 2}, {2, "c", 3}});
  Lts shorter = make(3, {{0, "a", 1}, {1, "b", 2}});
  TraceResult r = weak_trace_equivalent(longer, shorter);
  REQUIRE_FALSE(r.equivalent);
  CHECK(r.counterexample == std::vector<std::string>{"a", "b", "c"});
  CHECK(r.present_in == 1);
}

TEST_CASE("witness labels unique to the first input win ties") {
  // At the divergence point the first input admits "x", the second "y";
  // the report must speak about what the first can do.
  Lts a = make(3, {{0, "a", 1}, {1, "x", 2}});
  Lts b = make(3, {{0, "a", 1}, {1, "y", 2}});
  TraceResult r = weak_trace_equivalent(a, b);
  REQUIRE_FALSE(r.equivalent);
  CHECK(r.counterexample == std::vector<std::string>{"a", "x"});
  CHECK(r.present_in == 1);
}

TEST_CASE("when the first input's traces are a subset, the second is cited") {
  Lts fewer = make(2, {{0, "a", 1}});
  Lts more = make(3, {{0, "a", 1}, {0, "b", 2}});
  TraceResult r = weak_trace_equivalent(fewer, more);
  REQUIRE_FALSE(r.equivalent);
  CHECK(r.counterexample == std::vector<std::string>{"b"});
  CHECK(r.present_in == 2);
}

TEST_CASE("nondeterministic duplicates do not affect the verdict") {
  Lts dup = make(4, {{0, "a", 1}, {0, "a", 2}, {1, "b", 3}, {2, "b", 3}});
  Lts single = make(3, {{0, "a", 1}, {1, "b", 2}});
  CHECK(weak_trace_equivalent(dup, single).equivalent);
}

TEST_CASE("tau-only systems are equivalent to the empty system") {
  Lts taus = make(3, {{0, "tau", 1}, {1, "tau", 2}});
  Lts empty = make(1, {});
  CHECK(weak_trace_equivalent(taus, empty).equivalent);
}

TEST_CASE("cycles terminate: loops against their unrolling") {
  Lts loop = make(1, {{0, "a", 0}});
  Lts two = make(2, {{0, "a", 1}, {1, "a", 0}});
  CHECK(weak_trace_equivalent(loop, two).equivalent);
}

TEST_CASE("the pair budget is enforced") {
  // 12 parallel bits: the subset construction must blow past a tiny budget.
  Lts big;
  big.num_states = 1 << 12;
  for (std::uint32_t s = 0; s < big.num_states; ++s)
    for (int bit = 0; bit < 12; ++bit)
      if (!(s & (1u << bit)))
        big.transitions.push_back({s, "flip" + std::to_string(bit), s | (1u << bit)});
  big.normalize();
  CHECK_THROWS_AS(weak_trace_equivalent(big, big, /*max_pairs=*/64), LtsError);
}
