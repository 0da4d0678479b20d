#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "moolts/alpha.hpp"
#include "moolts/expr.hpp"
#include "moolts/moo_parser.hpp"
#include "moolts/project.hpp"
#include "moolts/stmt.hpp"
#include "moolts/transform.hpp"

using namespace moolts;
using namespace moolts::scpp;

namespace {

xform::ClassModel model_of(const std::string& src, const std::string& cls) {
  moo::TranslationUnit tu = moo::parse_translation_unit(src, "t.moo");
  return xform::transform_class(tu, cls, "t.moo");
}

Expr local(const char* v) { return Expr::read(Scope::Local, v); }
Expr num(std::int64_t n) { return Expr::constant(Value::number(n)); }

}  // namespace

// The pivotal shape: the controller loop whose condition carries two calls.
// Calls are hoisted in front of the loop, duplicated at the end of the body
// before the continue flag's back edge, the ternary becomes an ite feeding a
// fresh variable, and logical-or stays strict (both hoists unconditional).
TEST_CASE("movePlatform lowers to the canonical controller program") {
  xform::ClassModel m = model_of(proj::read_file(testing::fixture_path("suspension/suspension.moo")),
                                 "SuspensionController");
  REQUIRE(m.diagnostics.empty());
  REQUIRE(m.get_prog.count("movePlatform"));

  Expr owner1 = Expr::read(Scope::Global, "act1");
  Expr owner2 = Expr::read(Scope::Global, "act2");
  std::vector<Expr> call_args = {local("d")};

  Program expected = {
      Stmt::ite(local("up"),
                {Stmt::assign(Scope::Local, "__fv0", num(1))},
                {Stmt::assign(Scope::Local, "__fv0", num(-1))}),
      Stmt::assign(Scope::Local, "d", local("__fv0")),
      Stmt::call("__fv1", owner1, "move", call_args, {}),
      Stmt::call("__fv2", owner2, "move", call_args, {}),
      Stmt::while_loop(Expr::logical_or(Expr::not_equals(local("__fv1"), num(0)),
                                        Expr::not_equals(local("__fv2"), num(0))),
                       {
                           Stmt::flag(FlagKind::Continue, "__lbl3"),
                           Stmt::call("__fv1", owner1, "move", call_args, {}),
                           Stmt::call("__fv2", owner2, "move", call_args, {}),
                       }),
      Stmt::flag(FlagKind::Break, "__lbl3"),
  };

  CHECK(alpha_equal(m.get_prog.at("movePlatform"), expected));
}

TEST_CASE("alpha equality is a bijection on fresh names, exact on user names") {
  Program a = {Stmt::assign(Scope::Local, "__fv0", local("__fv1"))};
  Program b = {Stmt::assign(Scope::Local, "__fv7", local("__fv3"))};
  CHECK(alpha_equal(a, b));

  // Two distinct fresh vars cannot map to one.
  Program c = {Stmt::assign(Scope::Local, "__fv0", local("__fv0"))};
  CHECK_FALSE(alpha_equal(a, c));

  // User identifiers must match exactly.
  Program d = {Stmt::assign(Scope::Local, "x", num(1))};
  Program e = {Stmt::assign(Scope::Local, "y", num(1))};
  CHECK_FALSE(alpha_equal(d, e));
}

TEST_CASE("logical-and is short-circuit: the right operand is guarded") {
  xform::ClassModel m = model_of(R"(
class B {
public:
    bool probe() { return true; }
};
class A {
public:
    B* b;
    bool f(bool gate) {
        return gate && b->probe();
    }
};
)",
                                 "A");
  REQUIRE(m.diagnostics.empty());
  const Program& p = m.get_prog.at("f");

  // Somewhere in the lowering there must be an ite on the left operand whose
  // else-branch pins the result to false without calling probe.
  bool found_guard = false;
  for (const Stmt& s : p) {
    if (!s.is(Stmt::Kind::Ite)) continue;
    bool then_calls = false, else_calls = false;
    for (const Stmt& t : s.then_branch()) then_calls = then_calls || t.is(Stmt::Kind::Call);
    for (const Stmt& t : s.else_branch()) else_calls = else_calls || t.is(Stmt::Kind::Call);
    if (then_calls && !else_calls) found_guard = true;
  }
  CHECK(found_guard);
}

TEST_CASE("method metadata: return kinds and throw propagation") {
  xform::ClassModel m = model_of(R"(
class A {
public:
    void boom() { throw; }
    void safe() { }
    int relay() {
        boom();
        return 1;
    }
    bool flat(bool x) { return x; }
};
)",
                                 "A");
  REQUIRE(m.diagnostics.empty());
  CHECK(m.meta.at("boom").return_kind == Value::Kind::Void);
  CHECK(m.meta.at("relay").return_kind == Value::Kind::Number);
  CHECK(m.meta.at("flat").return_kind == Value::Kind::Boolean);
  CHECK(m.can_throw("boom"));
  CHECK(m.can_throw("relay"));  // own-class fixpoint: relay calls boom
  CHECK_FALSE(m.can_throw("safe"));
}

TEST_CASE("fields, members, and enums land in the declaration tables") {
  xform::ClassModel m = model_of(R"(
enum Phase { Cold, Hot };
class Inner {
public:
    void t() { }
};
class A {
public:
    int n;
    Phase ph;
    Inner* in1;
    void f() { }
};
)",
                                 "A");
  CHECK(m.fields.count("n"));
  CHECK(m.fields.count("ph"));
  CHECK(m.members.at("in1") == "Inner");
  REQUIRE(m.enums.count("Phase"));
  CHECK(m.enums.at("Phase") == std::vector<std::string>{"Cold", "Hot"});
}

TEST_CASE("a broken method becomes a diagnostic, not an abort") {
  moo::TranslationUnit tu = moo::parse_translation_unit(R"(
class A {
public:
    int ok() { return 1; }
    int bad() { return missing_var; }
};
)",
                                                        "t.moo");
  xform::ClassModel m = xform::transform_class(tu, "A", "t.moo");
  REQUIRE(m.diagnostics.size() == 1);
  CHECK(m.diagnostics[0].method == "bad");
  CHECK(m.get_prog.count("ok"));
  CHECK_FALSE(m.get_prog.count("bad"));
}

TEST_CASE("break and continue lower to jumps at the right nesting level") {
  xform::ClassModel m = model_of(R"(
class A {
public:
    int f(int n) {
        int acc = 0;
        while (acc < n) {
            acc++;
            if (acc == 3) {
                continue;
            }
            if (acc > 5) {
                break;
            }
        }
        return acc;
    }
};
)",
                                 "A");
  REQUIRE(m.diagnostics.empty());
  const Program& p = m.get_prog.at("f");

  // Find the while loop, then the jump statements inside its body.
  int jumps_continue = 0, jumps_break = 0;
  std::function<void(const Program&)> walk = [&](const Program& prog) {
    for (const Stmt& s : prog) {
      if (s.is(Stmt::Kind::Jump)) {
        (s.flag_kind() == FlagKind::Continue ? jumps_continue : jumps_break)++;
      }
      if (s.is(Stmt::Kind::Ite)) {
        walk(s.then_branch());
        walk(s.else_branch());
      }
      if (s.is(Stmt::Kind::While)) walk(s.loop_body());
    }
  };
  walk(p);
  CHECK(jumps_continue == 1);
  CHECK(jumps_break == 1);
}
