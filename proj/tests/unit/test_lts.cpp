#include <sstream>
#include <string>

#include "doctest.h"
#include "moolts/lts.hpp"

using namespace moolts::lts;

namespace {

Lts chain(std::initializer_list<const char*> labels) {
  Lts l;
  l.num_states = static_cast<std::uint32_t>(labels.size() + 1);
  std::uint32_t s = 0;
  for (const char* lab : labels) {
    l.transitions.push_back({s, lab, s + 1});
    ++s;
  }
  l.normalize();
  return l;
}

}  // namespace

TEST_CASE("normalize sorts and deduplicates transitions") {
  Lts l;
  l.num_states = 3;
  l.transitions = {{1, "b", 2}, {0, "a", 1}, {1, "b", 2}, {0, "a", 1}};
  l.normalize();
  REQUIRE(l.transitions.size() == 2);
  CHECK(l.transitions[0] == Transition{0, "a", 1});
  CHECK(l.transitions[1] == Transition{1, "b", 2});
}

TEST_CASE("label_matches: literals and trailing-star prefixes") {
  CHECK(label_matches("call_func(a,f,[],{})", "call_func(a,f,[],{})"));
  CHECK_FALSE(label_matches("call_func(a,f,[],{})", "call_func(a,f,[1],{})"));
  CHECK(label_matches("call_func(a,*", "call_func(a,f,[1],{})"));
  CHECK(label_matches("*", "anything"));
  CHECK_FALSE(label_matches("load(*", "store(a,x,1)"));
  // '*' is only special at the end: elsewhere it is a literal character.
  CHECK(label_matches("a*b", "a*b"));
  CHECK_FALSE(label_matches("a*b", "axb"));
}

TEST_CASE("hide_labels rewrites matches to tau and renormalizes") {
  Lts l = chain({"load(p,x,1)", "call_func(p,f,[],{})", "store(p,x,2)"});
  Lts hidden = hide_labels(l, {"load(*", "store(*"});
  REQUIRE(hidden.transitions.size() == 3);
  CHECK(hidden.transitions[0].label == kTau);
  CHECK(hidden.transitions[1].label == "call_func(p,f,[],{})");
  CHECK(hidden.transitions[2].label == kTau);
}

TEST_CASE("rename_labels applies the first matching rule only") {
  Lts l = chain({"call_func(p,move,[1],{})", "call_func(p,move,[-1],{})"});
  Lts renamed = rename_labels(l, {
                                     {"call_func(p,move,[1],{})", "up"},
                                     {"call_func(p,*", "other"},
                                 });
  CHECK(renamed.transitions[0].label == "up");
  CHECK(renamed.transitions[1].label == "other");
}

TEST_CASE("rename never touches tau") {
  Lts l = chain({"tau", "a"});
  Lts renamed = rename_labels(l, {{"*", "x"}});
  CHECK(renamed.transitions[0].label == "tau");
  CHECK(renamed.transitions[1].label == "x");
}

TEST_CASE("aut export/import round-trips exactly") {
  Lts l;
  l.num_states = 4;
  l.initial = 1;
  l.transitions = {{1, "a", 0}, {0, "tau", 2}, {2, "weird \"label\" \\ here", 3}};
  l.normalize();

  std::string text = to_aut(l);
  Lts back = import_aut_string(text);
  CHECK(back == l);
}

TEST_CASE("aut header carries initial state and counts") {
  Lts l = chain({"a", "b"});
  std::string text = to_aut(l);
  CHECK(text.rfind("des (0,2,3)", 0) == 0);
}

TEST_CASE("aut import accepts the documented shapes") {
  Lts l = import_aut_string("des (0, 2, 3)\n(0,\"a\",1)\n(1,\"tau\",2)\n");
  CHECK(l.num_states == 3);
  CHECK(l.initial == 0);
  REQUIRE(l.transitions.size() == 2);
  CHECK(l.transitions[0] == Transition{0, "a", 1});
}

TEST_CASE("aut import rejects malformed input with the line number") {
  CHECK_THROWS_AS(import_aut_string("not a header\n"), LtsError);
  CHECK_THROWS_AS(import_aut_string("des (0, 1, 2)\n(0,\"a\",5)\n"), LtsError);  // target out of range
  CHECK_THROWS_AS(import_aut_string("des (0, 2, 2)\n(0,\"a\",1)\n"), LtsError);  // count mismatch

  try {
    import_aut_string("des (0, 1, 2)\n(0,\"a\"\n");
    FAIL("expected LtsError");
  } catch (const LtsError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("hide_if hides by predicate but never invents tau matches") {
  Lts l = chain({"a", "tau", "b"});
  Lts h = hide_if(l, [](const std::string& lab) { return lab == "a"; });
  CHECK(h.transitions[0].label == "tau");
  CHECK(h.transitions[1].label == "tau");
  CHECK(h.transitions[2].label == "b");
}
