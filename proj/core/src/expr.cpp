#include "moolts/expr.hpp"

#include "moolts/stmt.hpp"

namespace moolts::scpp {

Expr Expr::make(Node n) {
  std::uint64_t h = hash_mix(0x5eed, static_cast<std::uint64_t>(n.kind));
  h = hash_mix(h, static_cast<std::uint64_t>(n.scope));
  h = hash_mix(h, hash_str(n.id));
  h = hash_mix(h, n.constant.hash());
  for (const Expr& c : n.children) h = hash_mix(h, c.hash());
  if (n.lambda) {
    for (const VarId& p : n.lambda->params) h = hash_mix(h, hash_str(p));
    for (const VarId& p : n.lambda->copies) h = hash_mix(h, hash_str(p));
    for (const VarId& p : n.lambda->refs) h = hash_mix(h, hash_str(p));
    h = hash_mix(h, hash_program(n.lambda->body));
  }
  n.hash = h;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::binary(Kind k, Expr a, Expr b) {
  Node n;
  n.kind = k;
  n.children.push_back(std::move(a));
  n.children.push_back(std::move(b));
  return make(std::move(n));
}

Expr Expr::negate(Expr a) {
  Node n;
  n.kind = Kind::Not;
  n.children.push_back(std::move(a));
  return make(std::move(n));
}

Expr Expr::read(Scope scope, VarId id) {
  Node n;
  n.kind = Kind::Read;
  n.scope = scope;
  n.id = std::move(id);
  return make(std::move(n));
}

Expr Expr::constant(Value v) {
  Node n;
  n.kind = Kind::Constant;
  n.constant = std::move(v);
  return make(std::move(n));
}

Expr Expr::self() {
  Node n;
  n.kind = Kind::Self;
  return make(std::move(n));
}

Expr Expr::ref_field(Expr owner, VarId field) {
  Node n;
  n.kind = Kind::RefField;
  n.id = std::move(field);
  n.children.push_back(std::move(owner));
  return make(std::move(n));
}

Expr Expr::init_lambda(LambdaExpr l) {
  Node n;
  n.kind = Kind::InitLambda;
  n.lambda = std::make_shared<const LambdaExpr>(std::move(l));
  return make(std::move(n));
}

Expr Expr::init_list(std::vector<Expr> elems) {
  Node n;
  n.kind = Kind::InitList;
  n.children = std::move(elems);
  return make(std::move(n));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.hash != y.hash) return false;
  if (x.scope != y.scope || x.id != y.id) return false;
  if (!(x.constant == y.constant)) return false;
  if (x.children.size() != y.children.size()) return false;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (!(x.children[i] == y.children[i])) return false;
  if (static_cast<bool>(x.lambda) != static_cast<bool>(y.lambda)) return false;
  if (x.lambda) {
    if (x.lambda->params != y.lambda->params || x.lambda->copies != y.lambda->copies ||
        x.lambda->refs != y.lambda->refs)
      return false;
    if (!(x.lambda->body == y.lambda->body)) return false;
  }
  return true;
}

const char* expr_kind_name(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Minus: return "minus";
    case Expr::Kind::Plus: return "plus";
    case Expr::Kind::Divide: return "divide";
    case Expr::Kind::Multiply: return "multiply";
    case Expr::Kind::Equals: return "equals";
    case Expr::Kind::NotEquals: return "not_equals";
    case Expr::Kind::GreaterThan: return "greater_than";
    case Expr::Kind::GreaterEqual: return "greater_equal";
    case Expr::Kind::SmallerEqual: return "smaller_equal";
    case Expr::Kind::SmallerThan: return "smaller_than";
    case Expr::Kind::Not: return "not";
    case Expr::Kind::Or: return "or";
    case Expr::Kind::And: return "and";
    case Expr::Kind::Read: return "read";
    case Expr::Kind::Constant: return "constant";
    case Expr::Kind::At: return "at";
    case Expr::Kind::Self: return "self";
    case Expr::Kind::RefField: return "ref_field";
    case Expr::Kind::InitLambda: return "init_lambda";
    case Expr::Kind::InitList: return "init_list";
  }
  return "?";
}

}  // namespace moolts::scpp
