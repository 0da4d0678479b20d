#pragma once

#include <cassert>
#include <memory>
#include <string>
#include <vector>

#include "moolts/ids.hpp"
#include "moolts/value.hpp"

namespace moolts::scpp {

// Payload of an init_lambda expression (captures not yet evaluated).
struct LambdaExpr {
  std::vector<VarId> params;
  std::vector<VarId> copies;
  std::vector<VarId> refs;
  Program body;
};

// Pure expression of the intermediate language. Immutable, shared nodes.
class Expr {
 public:
  enum class Kind : std::uint8_t {
    Minus,
    Plus,
    Divide,
    Multiply,
    Equals,
    NotEquals,
    GreaterThan,
    GreaterEqual,
    SmallerEqual,
    SmallerThan,
    Not,
    Or,
    And,
    Read,
    Constant,
    At,
    Self,
    RefField,
    InitLambda,
    InitList,
  };

  static Expr minus(Expr a, Expr b) { return binary(Kind::Minus, std::move(a), std::move(b)); }
  static Expr plus(Expr a, Expr b) { return binary(Kind::Plus, std::move(a), std::move(b)); }
  static Expr divide(Expr a, Expr b) { return binary(Kind::Divide, std::move(a), std::move(b)); }
  static Expr multiply(Expr a, Expr b) { return binary(Kind::Multiply, std::move(a), std::move(b)); }
  static Expr equals(Expr a, Expr b) { return binary(Kind::Equals, std::move(a), std::move(b)); }
  static Expr not_equals(Expr a, Expr b) { return binary(Kind::NotEquals, std::move(a), std::move(b)); }
  static Expr greater_than(Expr a, Expr b) { return binary(Kind::GreaterThan, std::move(a), std::move(b)); }
  static Expr greater_equal(Expr a, Expr b) { return binary(Kind::GreaterEqual, std::move(a), std::move(b)); }
  static Expr smaller_equal(Expr a, Expr b) { return binary(Kind::SmallerEqual, std::move(a), std::move(b)); }
  static Expr smaller_than(Expr a, Expr b) { return binary(Kind::SmallerThan, std::move(a), std::move(b)); }
  static Expr negate(Expr a);  // not(E)
  static Expr logical_or(Expr a, Expr b) { return binary(Kind::Or, std::move(a), std::move(b)); }
  static Expr logical_and(Expr a, Expr b) { return binary(Kind::And, std::move(a), std::move(b)); }
  static Expr read(Scope scope, VarId id);
  static Expr constant(Value v);
  static Expr at(Expr seq, Expr index) { return binary(Kind::At, std::move(seq), std::move(index)); }
  static Expr self();
  static Expr ref_field(Expr owner, VarId field);
  static Expr init_lambda(LambdaExpr l);
  static Expr init_list(std::vector<Expr> elems);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  bool is_binary() const { return node_->kind <= Kind::And && node_->kind != Kind::Not; }

  const Expr& lhs() const { return node_->children[0]; }
  const Expr& rhs() const { return node_->children[1]; }
  const Expr& operand() const { return node_->children[0]; }     // Not
  const Expr& owner() const { return node_->children[0]; }       // RefField
  Scope scope() const { return node_->scope; }                   // Read
  const VarId& var() const { return node_->id; }                 // Read
  const VarId& field() const { return node_->id; }               // RefField
  const Value& constant_value() const { return node_->constant; }
  const LambdaExpr& lambda() const { return *node_->lambda; }
  const std::vector<Expr>& list() const { return node_->children; }  // InitList

  std::uint64_t hash() const { return node_->hash; }

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    Scope scope = Scope::Local;
    std::string id;
    Value constant;
    std::vector<Expr> children;
    std::shared_ptr<const LambdaExpr> lambda;
    std::uint64_t hash = 0;
  };

  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr binary(Kind k, Expr a, Expr b);
  static Expr make(Node n);

  std::shared_ptr<const Node> node_;
};

const char* expr_kind_name(Expr::Kind k);

}  // namespace moolts::scpp
