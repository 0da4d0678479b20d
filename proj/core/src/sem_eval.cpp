#include "moolts/sem_eval.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace moolts::sem {
namespace {

using scpp::Expr;
using scpp::Value;

[[noreturn]] void type_error(const Expr& e, const std::string& what) {
  throw EngineError(std::string(scpp::expr_kind_name(e.kind())) + ": " + what);
}

std::int64_t want_number(const Expr& e, const Value& v) {
  if (!v.is(Value::Kind::Number)) type_error(e, "expected a number, got " + scpp::render_value(v));
  return v.number_value();
}

bool want_boolean(const Expr& e, const Value& v) {
  if (!v.is(Value::Kind::Boolean)) type_error(e, "expected a boolean, got " + scpp::render_value(v));
  return v.boolean_value();
}

Value arith(const Expr& e, const Value& av, const Value& bv) {
  std::int64_t a = want_number(e, av);
  std::int64_t b = want_number(e, bv);
  std::int64_t r = 0;
  switch (e.kind()) {
    case Expr::Kind::Plus:
      if (__builtin_add_overflow(a, b, &r)) type_error(e, "integer overflow");
      return Value::number(r);
    case Expr::Kind::Minus:
      if (__builtin_sub_overflow(a, b, &r)) type_error(e, "integer overflow");
      return Value::number(r);
    case Expr::Kind::Multiply:
      if (__builtin_mul_overflow(a, b, &r)) type_error(e, "integer overflow");
      return Value::number(r);
    case Expr::Kind::Divide:
      if (b == 0) type_error(e, "division by zero");
      if (a == INT64_MIN && b == -1) type_error(e, "integer overflow");
      return Value::number(a / b);
    case Expr::Kind::GreaterThan:
      return Value::boolean(a > b);
    case Expr::Kind::GreaterEqual:
      return Value::boolean(a >= b);
    case Expr::Kind::SmallerThan:
      return Value::boolean(a < b);
    case Expr::Kind::SmallerEqual:
      return Value::boolean(a <= b);
    default:
      type_error(e, "not an arithmetic operator");
  }
}

}  // namespace

Value eval_expr(const Expr& e, const EvalCtx& ctx) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return e.constant_value();
    case Expr::Kind::Read:
      return e.scope() == scpp::Scope::Local ? sigma_get(ctx.sigma_l, e.var())
                                             : sigma_get(ctx.sigma_g, e.var());
    case Expr::Kind::Self:
      return Value::ptype(ctx.self);
    case Expr::Kind::Not:
      return Value::boolean(!want_boolean(e, eval_expr(e.operand(), ctx)));
    case Expr::Kind::And: {
      bool a = want_boolean(e, eval_expr(e.lhs(), ctx));
      bool b = want_boolean(e, eval_expr(e.rhs(), ctx));
      return Value::boolean(a && b);
    }
    case Expr::Kind::Or: {
      bool a = want_boolean(e, eval_expr(e.lhs(), ctx));
      bool b = want_boolean(e, eval_expr(e.rhs(), ctx));
      return Value::boolean(a || b);
    }
    case Expr::Kind::Equals:
      return Value::boolean(eval_expr(e.lhs(), ctx) == eval_expr(e.rhs(), ctx));
    case Expr::Kind::NotEquals:
      return Value::boolean(eval_expr(e.lhs(), ctx) != eval_expr(e.rhs(), ctx));
    case Expr::Kind::Plus:
    case Expr::Kind::Minus:
    case Expr::Kind::Multiply:
    case Expr::Kind::Divide:
    case Expr::Kind::GreaterThan:
    case Expr::Kind::GreaterEqual:
    case Expr::Kind::SmallerThan:
    case Expr::Kind::SmallerEqual:
      return arith(e, eval_expr(e.lhs(), ctx), eval_expr(e.rhs(), ctx));
    case Expr::Kind::At: {
      Value seq = eval_expr(e.lhs(), ctx);
      if (!seq.is(Value::Kind::OrderedSet))
        type_error(e, "subscripted value is not a set, got " + scpp::render_value(seq));
      std::int64_t i = want_number(e, eval_expr(e.rhs(), ctx));
      const auto& elems = seq.elements();
      if (i < 0 || static_cast<std::size_t>(i) >= elems.size())
        type_error(e, "index " + std::to_string(i) + " out of range for size " +
                          std::to_string(elems.size()));
      return elems[static_cast<std::size_t>(i)];
    }
    case Expr::Kind::RefField: {
      Value owner = eval_expr(e.owner(), ctx);
      if (!owner.is(Value::Kind::PType))
        type_error(e, "owner is not a process reference, got " + scpp::render_value(owner));
      return Value::field_ref(owner.proc(), e.field());
    }
    case Expr::Kind::InitLambda: {
      const scpp::LambdaExpr& l = e.lambda();
      scpp::LambdaParts parts;
      parts.params = l.params;
      parts.copied = make_lras(l.copies, ctx.sigma_l);
      parts.ref_captures = l.refs;
      parts.body = l.body;
      return Value::lambda(std::move(parts));
    }
    case Expr::Kind::InitList: {
      std::vector<Value> elems;
      elems.reserve(e.list().size());
      for (const auto& el : e.list()) elems.push_back(eval_expr(el, ctx));
      return Value::ordered_set(std::move(elems));
    }
  }
  throw EngineError("unreachable expression kind");
}

}  // namespace moolts::sem
