#include "moolts/pretty.hpp"

#include <sstream>

namespace moolts::scpp {
namespace {

std::string indent_of(int n) { return std::string(static_cast<std::size_t>(n) * 2, ' '); }

std::string program_inline(const Program& p);

std::string join_vars(const std::vector<VarId>& vs) {
  std::string out = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ", ";
    out += vs[i];
  }
  out += "]";
  return out;
}

std::string value_ctor(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Number:
      return "Number(" + std::to_string(v.number_value()) + ")";
    case Value::Kind::Boolean:
      return std::string("Boolean(") + (v.boolean_value() ? "true" : "false") + ")";
    case Value::Kind::OrderedSet: {
      std::string out = "OrderedSet([";
      const auto& es = v.elements();
      for (std::size_t i = 0; i < es.size(); ++i) {
        if (i) out += ", ";
        out += value_ctor(es[i]);
      }
      return out + "])";
    }
    case Value::Kind::Void:
      return "VoidType";
    case Value::Kind::PType:
      return "PType(" + v.proc() + ")";
    case Value::Kind::Enum:
      return "EnumType(" + v.enum_literal() + ")";
    case Value::Kind::FieldRef:
      return "FieldRef(" + v.proc() + ", " + v.field() + ")";
    case Value::Kind::LocalRef:
      return "LocalRef(" + v.var() + ")";
    case Value::Kind::Lambda: {
      const auto& lp = v.lambda_parts();
      std::string copied = "{";
      for (std::size_t i = 0; i < lp.copied.size(); ++i) {
        if (i) copied += ", ";
        copied += lp.copied[i].first + "=" + value_ctor(lp.copied[i].second);
      }
      copied += "}";
      return "Lambda(" + join_vars(lp.params) + ", " + copied + ", " + join_vars(lp.ref_captures) +
             ", " + program_inline(lp.body) + ")";
    }
    case Value::Kind::String:
      return "StringType(" + render_value(v) + ")";
  }
  return "?";
}

std::string expr_str(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Read:
      return "read(" + std::string(to_string(e.scope())) + ", " + e.var() + ")";
    case Expr::Kind::Constant:
      return "constant(" + value_ctor(e.constant_value()) + ")";
    case Expr::Kind::Self:
      return "self";
    case Expr::Kind::RefField:
      return "ref_field(" + expr_str(e.owner()) + ", " + e.field() + ")";
    case Expr::Kind::Not:
      return "not(" + expr_str(e.operand()) + ")";
    case Expr::Kind::At:
      return "at(" + expr_str(e.lhs()) + ", " + expr_str(e.rhs()) + ")";
    case Expr::Kind::InitLambda: {
      const auto& l = e.lambda();
      return "init_lambda(" + join_vars(l.params) + ", " + join_vars(l.copies) + ", " +
             join_vars(l.refs) + ", " + program_inline(l.body) + ")";
    }
    case Expr::Kind::InitList: {
      std::string out = "init_list([";
      const auto& es = e.list();
      for (std::size_t i = 0; i < es.size(); ++i) {
        if (i) out += ", ";
        out += expr_str(es[i]);
      }
      return out + "])";
    }
    default:
      return std::string(expr_kind_name(e.kind())) + "(" + expr_str(e.lhs()) + ", " +
             expr_str(e.rhs()) + ")";
  }
}

std::string join_exprs(const std::vector<Expr>& es) {
  std::string out = "[";
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) out += ", ";
    out += expr_str(es[i]);
  }
  out += "]";
  return out;
}

// Single-line rendering, used inside expressions (lambda bodies) and for leaves.
std::string stmt_inline(const Stmt& s) {
  switch (s.kind()) {
    case Stmt::Kind::Return:
      return "return(" + expr_str(s.expr()) + ")";
    case Stmt::Kind::Assign:
      return "assign(" + std::string(to_string(s.scope())) + ", " + s.var() + ", " + expr_str(s.expr()) + ")";
    case Stmt::Kind::Call:
      return "call(" + s.result_var() + ", " + expr_str(s.owner()) + ", " + s.func() + ", " +
             join_exprs(s.args()) + ", " + join_vars(s.ref_args()) + ")";
    case Stmt::Kind::Ite:
      return "ite(" + expr_str(s.cond()) + ", " + program_inline(s.then_branch()) + ", " +
             program_inline(s.else_branch()) + ")";
    case Stmt::Kind::While:
      return "while(" + expr_str(s.cond()) + ", " + program_inline(s.loop_body()) + ")";
    case Stmt::Kind::RefLoad:
      return "ref_load(" + s.var() + ", " + expr_str(s.expr()) + ")";
    case Stmt::Kind::RefAssign:
      return "ref_assign(" + expr_str(s.target_ref()) + ", " + expr_str(s.value_expr()) + ")";
    case Stmt::Kind::Jump:
      return "jump(" + std::string(to_string(s.flag_kind())) + ", " + s.label() + ")";
    case Stmt::Kind::Flag:
      return "flag(" + std::string(to_string(s.flag_kind())) + ", " + s.label() + ")";
    case Stmt::Kind::Throw:
      return "throw()";
    case Stmt::Kind::Catch:
      return "catch(" + program_inline(s.handler()) + ")";
    case Stmt::Kind::CallLambda:
      return "call_lambda(" + s.result_var() + ", " + s.lambda_var() + ", " + join_exprs(s.args()) +
             ", " + join_vars(s.ref_args()) + ")";
  }
  return "?";
}

std::string program_inline(const Program& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += stmt_inline(p[i]);
  }
  out += "]";
  return out;
}

std::string block(const Program& p, int indent) {
  if (p.empty()) return "[]";
  std::ostringstream out;
  out << "[\n" << pretty_program(p, indent + 1) << "\n" << indent_of(indent) << "]";
  return out.str();
}

}  // namespace

std::string pretty_expr(const Expr& e) { return expr_str(e); }

std::string pretty_stmt(const Stmt& s, int indent) {
  const std::string pad = indent_of(indent);
  switch (s.kind()) {
    case Stmt::Kind::Ite:
      return pad + "ite(" + expr_str(s.cond()) + ", " + block(s.then_branch(), indent) + ", " +
             block(s.else_branch(), indent) + ")";
    case Stmt::Kind::While:
      return pad + "while(" + expr_str(s.cond()) + ", " + block(s.loop_body(), indent) + ")";
    case Stmt::Kind::Catch:
      return pad + "catch(" + block(s.handler(), indent) + ")";
    default:
      return pad + stmt_inline(s);
  }
}

std::string pretty_program(const Program& p, int indent) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += "\n";
    out += pretty_stmt(p[i], indent);
  }
  return out;
}

}  // namespace moolts::scpp
