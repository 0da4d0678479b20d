#include <string>

#include "doctest.h"
#include "moolts/moo_ast.hpp"
#include "moolts/moo_parser.hpp"

using namespace moolts::moo;

namespace {

TranslationUnit parse(const std::string& src) { return parse_translation_unit(src, "t.moo"); }

std::string error_of(const std::string& src) {
  try {
    parse(src);
  } catch (const MooError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("class with fields, members, and methods") {
  TranslationUnit tu = parse(R"(
enum Gear { Park, Drive };

class Wheel {
public:
    int spin(int v) { return v; }
};

class Car {
public:
    int speed;
    Gear gear;
    Wheel* front;

    void drive(int target, bool fast) {
        speed = target;
    }
};
)");
  REQUIRE(tu.enums.size() == 1);
  CHECK(tu.enums[0].name == "Gear");
  CHECK(tu.enums[0].literals == std::vector<std::string>{"Park", "Drive"});

  REQUIRE(tu.classes.size() == 2);
  const ClassDecl& car = tu.classes[1];
  CHECK(car.name == "Car");
  REQUIRE(car.fields.size() == 2);
  CHECK(car.fields[0].type.kind == Type::Kind::Int);
  CHECK(car.fields[1].type.kind == Type::Kind::Named);
  CHECK(car.fields[1].type.name == "Gear");
  REQUIRE(car.members.size() == 1);
  CHECK(car.members[0].name == "front");
  CHECK(car.members[0].class_name == "Wheel");

  REQUIRE(car.methods.size() == 1);
  const MethodDecl& m = car.methods[0];
  CHECK(m.name == "drive");
  REQUIRE(m.params.size() == 2);
  CHECK(m.params[0].name == "target");
  CHECK_FALSE(m.params[0].by_ref);
  CHECK(m.return_type.kind == Type::Kind::Void);
}

TEST_CASE("reference parameters are marked") {
  TranslationUnit tu = parse(R"(
class A {
public:
    void f(int& x, int y) { x = y; }
};
)");
  const MethodDecl& m = tu.classes[0].methods[0];
  CHECK(m.params[0].by_ref);
  CHECK_FALSE(m.params[1].by_ref);
}

TEST_CASE("expression grammar: precedence and associativity") {
  TranslationUnit tu = parse(R"(
class A {
public:
    int f(int a, int b) {
        return a + b * 2 - a / b;
    }
};
)");
  const Stmt& ret = tu.classes[0].methods[0].body[0];
  REQUIRE(ret.kind == Stmt::Kind::Return);
  // (a + (b*2)) - (a/b)
  const Expr& e = ret.exprs[0];
  REQUIRE(e.kind == Expr::Kind::Binary);
  CHECK(e.text == "-");
  CHECK(e.kids[0].text == "+");
  CHECK(e.kids[0].kids[1].text == "*");
  CHECK(e.kids[1].text == "/");
}

TEST_CASE("ternary is right-associative") {
  TranslationUnit tu = parse(R"(
class A {
public:
    int f(int a) {
        return a < 0 ? 1 : a < 10 ? 2 : 3;
    }
};
)");
  const Expr& e = tu.classes[0].methods[0].body[0].exprs[0];
  REQUIRE(e.kind == Expr::Kind::Ternary);
  CHECK(e.kids[2].kind == Expr::Kind::Ternary);
}

TEST_CASE("statement grammar: loops, switch, try") {
  TranslationUnit tu = parse(R"(
class A {
public:
    int f(int n) {
        int acc = 0;
        for (int i = 0; i < n; i++) {
            acc = acc + i;
        }
        while (acc > 100) {
            acc = acc - 1;
        }
        switch (n) {
            case 0:
                acc = 1;
                break;
            default:
                break;
        }
        try {
            throw;
        } catch (...) {
            acc = -1;
        }
        return acc;
    }
};
)");
  const std::vector<Stmt>& body = tu.classes[0].methods[0].body;
  REQUIRE(body.size() == 6);
  CHECK(body[1].kind == Stmt::Kind::For);
  CHECK(body[2].kind == Stmt::Kind::While);
  CHECK(body[3].kind == Stmt::Kind::Switch);
  REQUIRE(body[3].cases.size() == 2);
  CHECK(body[3].cases[1].is_default);
  CHECK(body[4].kind == Stmt::Kind::Try);
}

TEST_CASE("for loop parts are optional") {
  TranslationUnit tu = parse(R"(
class A {
public:
    int f() {
        int i = 0;
        for (;;) {
            i++;
            if (i > 2) {
                break;
            }
        }
        return i;
    }
};
)");
  const Stmt& loop = tu.classes[0].methods[0].body[1];
  REQUIRE(loop.kind == Stmt::Kind::For);
  CHECK(loop.pre.empty());
  CHECK_FALSE(loop.has_cond);
  CHECK(loop.post.empty());
}

TEST_CASE("method calls need an arrow; dot is for fields only") {
  std::string err = error_of(R"(
class B {
public:
    void g() { }
};
class A {
public:
    B* b;
    void f() { b.g(); }
};
)");
  CHECK(err.find("->") != std::string::npos);
}

TEST_CASE("errors carry file, line, and column") {
  std::string err = error_of("class A {\npublic:\n    int f( { return 1; }\n};\n");
  CHECK(err.find("t.moo:3:") != std::string::npos);
}

TEST_CASE("keywords cannot name variables") {
  CHECK(error_of(R"(
class A {
public:
    int f() { int while = 3; return while; }
};
)") != "");
}

TEST_CASE("duplicate default in a switch is rejected") {
  std::string err = error_of(R"(
class A {
public:
    int f(int n) {
        switch (n) {
            default:
                break;
            default:
                break;
        }
        return 0;
    }
};
)");
  CHECK(err.find("default") != std::string::npos);
}

TEST_CASE("lambdas parse with capture list, params, and body") {
  TranslationUnit tu = parse(R"(
class A {
public:
    int f(int seed) {
        int acc = 0;
        auto g = [seed, &acc](int k) { return seed + k; };
        return g(1);
    }
};
)");
  const Stmt& decl = tu.classes[0].methods[0].body[1];
  REQUIRE(decl.kind == Stmt::Kind::VarDecl);
  REQUIRE(decl.has_init);
  const Expr& lam = decl.exprs[0];
  REQUIRE(lam.kind == Expr::Kind::Lambda);
  REQUIRE(lam.captures.size() == 2);
  CHECK_FALSE(lam.captures[0].by_ref);
  CHECK(lam.captures[1].by_ref);
  CHECK(lam.params.size() == 1);
}

TEST_CASE("global functions and variables are admitted at top level") {
  TranslationUnit tu = parse(R"(
int counter;

int bump(int by) {
    counter = counter + by;
    return counter;
}

class A {
public:
    int f() { return 0; }
};
)");
  CHECK(tu.global_vars.size() == 1);
  CHECK(tu.global_funcs.size() == 1);
  CHECK(tu.classes.size() == 1);
}

TEST_CASE("postfix chains: index, member, increment") {
  TranslationUnit tu = parse(R"(
class A {
public:
    int f(int i) {
        list<int> xs = {1, 2, 3};
        int v = xs[i];
        v++;
        return v;
    }
};
)");
  const std::vector<Stmt>& body = tu.classes[0].methods[0].body;
  CHECK(body[1].exprs[0].kind == Expr::Kind::Index);
  CHECK(body[2].exprs[0].kind == Expr::Kind::PostIncr);
}
