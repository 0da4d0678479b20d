#include <vector>

#include "doctest.h"
#include "moolts/value.hpp"

using namespace moolts::scpp;

TEST_CASE("scalar values render in source form") {
  CHECK(render_value(Value::number(42)) == "42");
  CHECK(render_value(Value::number(-7)) == "-7");
  CHECK(render_value(Value::boolean(true)) == "true");
  CHECK(render_value(Value::boolean(false)) == "false");
  CHECK(render_value(Value::void_value()) == "void");
}

TEST_CASE("ordered sets render elementwise without spaces") {
  Value s = Value::ordered_set({Value::number(1), Value::number(2), Value::number(3)});
  CHECK(render_value(s) == "[1,2,3]");
  CHECK(render_value(Value::ordered_set({})) == "[]");

  Value nested = Value::ordered_set({Value::ordered_set({Value::number(1)}), Value::number(2)});
  CHECK(render_value(nested) == "[[1],2]");
}

TEST_CASE("strings escape quotes and backslashes only") {
  CHECK(render_value(Value::string("hi")) == "\"hi\"");
  CHECK(render_value(Value::string("a\"b")) == "\"a\\\"b\"");
  CHECK(render_value(Value::string("a\\b")) == "\"a\\\\b\"");
  CHECK(render_value(Value::string("")) == "\"\"");
}

TEST_CASE("process references and enum literals render bare") {
  CHECK(render_value(Value::ptype("act1")) == "act1");
  CHECK(render_value(Value::enum_lit("Idle")) == "Idle");
}

TEST_CASE("value equality is structural") {
  CHECK(Value::number(3) == Value::number(3));
  CHECK(Value::number(3) != Value::number(4));
  CHECK(Value::number(3) != Value::boolean(true));
  CHECK(Value::ordered_set({Value::number(1), Value::number(2)}) ==
        Value::ordered_set({Value::number(1), Value::number(2)}));
  CHECK(Value::ordered_set({Value::number(2), Value::number(1)}) !=
        Value::ordered_set({Value::number(1), Value::number(2)}));
  CHECK(Value::string("x") == Value::string("x"));
  CHECK(Value::string("x") != Value::string("y"));
  CHECK(Value::void_value() == Value::void_value());
}

TEST_CASE("accessors expose the underlying payloads") {
  Value s = Value::ordered_set({Value::number(9)});
  REQUIRE(s.kind() == Value::Kind::OrderedSet);
  REQUIRE(s.elements().size() == 1);
  CHECK(s.elements()[0].number_value() == 9);

  Value p = Value::ptype("dev");
  CHECK(p.proc() == "dev");

  Value e = Value::enum_lit("Run");
  CHECK(e.enum_literal() == "Run");
}
