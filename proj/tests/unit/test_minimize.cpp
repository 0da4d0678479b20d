#include "doctest.h"
#include "moolts/lts.hpp"
#include "moolts/minimize.hpp"

using namespace moolts::lts;

namespace {

Lts make(std::uint32_t n, std::initializer_list<Transition> ts, std::uint32_t init = 0) {
  Lts l;
  l.num_states = n;
  l.initial = init;
  l.transitions = ts;
  l.normalize();
  return l;
}

}  // namespace

TEST_CASE("strong minimization merges bisimilar diamond branches") {
  // Two a-branches that behave identically afterwards collapse to one.
  Lts l = make(5, {{0, "a", 1}, {0, "a", 2}, {1, "b", 3}, {2, "b", 4}});
  Lts m = minimize_strong_bisim(l);
  CHECK(m.num_states == 3);
  REQUIRE(m.transitions.size() == 2);
  CHECK(m.transitions[0].label == "a");
  CHECK(m.transitions[1].label == "b");
}

TEST_CASE("strong minimization keeps genuinely different branches apart") {
  // a·b + a·c: the two a-successors are not bisimilar.
  Lts l = make(5, {{0, "a", 1}, {0, "a", 2}, {1, "b", 3}, {2, "c", 4}});
  Lts m = minimize_strong_bisim(l);
  CHECK(m.num_states == 4);
  CHECK(m.transitions.size() == 4);
}

TEST_CASE("strong bisimulation does not abstract tau") {
  Lts with_tau = make(3, {{0, "tau", 1}, {1, "a", 2}});
  Lts without = make(2, {{0, "a", 1}});
  CHECK_FALSE(strong_bisim_equivalent(with_tau, without));
  CHECK(branching_bisim_equivalent(with_tau, without));
}

TEST_CASE("branching minimization compresses inert tau chains") {
  Lts l = make(4, {{0, "tau", 1}, {1, "tau", 2}, {2, "a", 3}});
  Lts m = minimize_branching_bisim(l);
  CHECK(m.num_states == 2);
  REQUIRE(m.transitions.size() == 1);
  CHECK(m.transitions[0].label == "a");
}

TEST_CASE("branching minimization keeps non-inert tau") {
  // tau that discards the option of doing b is observable; the two terminal
  // states still merge.
  Lts l = make(4, {{0, "tau", 1}, {0, "b", 2}, {1, "a", 3}});
  Lts m = minimize_branching_bisim(l);
  CHECK(m.num_states == 3);
  REQUIRE(m.transitions.size() == 3);
  bool tau_kept = false;
  for (const auto& t : m.transitions) tau_kept = tau_kept || t.label == kTau;
  CHECK(tau_kept);
}

TEST_CASE("branching quotient drops inert tau self-loops by default") {
  Lts l = make(2, {{0, "tau", 0}, {0, "a", 1}});
  Lts dropped = minimize_branching_bisim(l);
  CHECK(dropped.transitions.size() == 1);
  Lts kept = minimize_branching_bisim(l, /*keep_tau_loops=*/true);
  CHECK(kept.transitions.size() == 2);
}

TEST_CASE("minimization is idempotent") {
  Lts l = make(6, {{0, "a", 1},
                   {0, "a", 2},
                   {1, "tau", 3},
                   {2, "b", 4},
                   {3, "b", 5}});
  Lts s1 = minimize_strong_bisim(l);
  CHECK(minimize_strong_bisim(s1) == s1);
  Lts b1 = minimize_branching_bisim(l);
  CHECK(minimize_branching_bisim(b1) == b1);
}

TEST_CASE("quotient numbering is canonical: same input, same output") {
  Lts l = make(5, {{0, "b", 1}, {0, "a", 2}, {1, "c", 3}, {2, "c", 4}});
  CHECK(minimize_strong_bisim(l) == minimize_strong_bisim(l));
  CHECK(minimize_branching_bisim(l) == minimize_branching_bisim(l));
}

TEST_CASE("equivalence verdicts agree with quotient comparison") {
  Lts a = make(3, {{0, "a", 1}, {1, "b", 2}});
  Lts b = make(4, {{0, "a", 1}, {0, "a", 2}, {1, "b", 3}, {2, "b", 3}});
  CHECK(strong_bisim_equivalent(a, b));
  CHECK(branching_bisim_equivalent(a, b));

  Lts c = make(3, {{0, "a", 1}, {1, "c", 2}});
  CHECK_FALSE(strong_bisim_equivalent(a, c));
  CHECK_FALSE(branching_bisim_equivalent(a, c));
}

TEST_CASE("initial state matters for equivalence") {
  Lts a = make(2, {{0, "a", 1}}, /*init=*/0);
  Lts b = make(2, {{0, "a", 1}}, /*init=*/1);
  CHECK_FALSE(strong_bisim_equivalent(a, b));
}

TEST_CASE("partitions assign bisimilar states the same block") {
  Lts l = make(5, {{0, "a", 1}, {0, "a", 2}, {1, "b", 3}, {2, "b", 4}});
  auto part = strong_partition(l);
  REQUIRE(part.size() == 5);
  CHECK(part[1] == part[2]);
  CHECK(part[3] == part[4]);
  CHECK(part[0] != part[1]);
}
