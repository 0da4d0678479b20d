#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "moolts/expr.hpp"
#include "moolts/ids.hpp"
#include "moolts/value.hpp"

namespace moolts::scpp {

// Statement of the intermediate language. Immutable, shared nodes; a Program
// is a plain vector so head/tail slicing is cheap shallow copying.
class Stmt {
 public:
  enum class Kind : std::uint8_t {
    Return,
    Assign,
    Call,
    Ite,
    While,
    RefLoad,
    RefAssign,
    Jump,
    Flag,
    Throw,
    Catch,
    CallLambda,
  };

  static Stmt ret(Expr e);
  static Stmt assign(Scope scope, VarId id, Expr e);
  static Stmt call(VarId result, Expr owner, FuncId func, std::vector<Expr> args, std::vector<VarId> refs);
  static Stmt ite(Expr cond, Program then_branch, Program else_branch);
  static Stmt while_loop(Expr cond, Program body);
  static Stmt ref_load(VarId target, Expr ref);
  static Stmt ref_assign(Expr target_ref, Expr e);
  static Stmt jump(FlagKind flag, Label label);
  static Stmt flag(FlagKind flag, Label label);
  static Stmt throw_stmt();
  static Stmt catch_handler(Program handler);
  static Stmt call_lambda(VarId result, VarId lambda_var, std::vector<Expr> args, std::vector<VarId> refs);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }

  const Expr& expr() const { return node_->exprs[0]; }            // Return / Assign / RefLoad(ref) / cond
  const Expr& cond() const { return node_->exprs[0]; }            // Ite / While
  Scope scope() const { return node_->scope; }                    // Assign
  const VarId& var() const { return node_->id; }                  // Assign target / RefLoad target
  const VarId& result_var() const { return node_->id; }           // Call / CallLambda
  const FuncId& func() const { return node_->id2; }               // Call
  const VarId& lambda_var() const { return node_->id2; }          // CallLambda
  const Expr& owner() const { return node_->exprs[0]; }           // Call
  std::vector<Expr> args() const;                                 // Call (exprs[1..]) / CallLambda (exprs[0..])
  const std::vector<VarId>& ref_args() const { return node_->refs; }
  const Program& then_branch() const { return node_->body1; }     // Ite
  const Program& else_branch() const { return node_->body2; }     // Ite
  const Program& loop_body() const { return node_->body1; }       // While
  const Program& handler() const { return node_->body1; }         // Catch
  const Expr& target_ref() const { return node_->exprs[0]; }      // RefAssign
  const Expr& value_expr() const { return node_->exprs[1]; }      // RefAssign
  FlagKind flag_kind() const { return node_->flag; }              // Jump / Flag
  const Label& label() const { return node_->id; }                // Jump / Flag

  std::uint64_t hash() const { return node_->hash; }

  friend bool operator==(const Stmt& a, const Stmt& b);
  friend bool operator!=(const Stmt& a, const Stmt& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    Scope scope = Scope::Local;
    std::string id;   // assign/ref_load target, call result, jump/flag label
    std::string id2;  // call func, call_lambda lambda var
    FlagKind flag = FlagKind::Continue;
    std::vector<Expr> exprs;
    Program body1;
    Program body2;
    std::vector<VarId> refs;
    std::uint64_t hash = 0;
  };

  explicit Stmt(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Stmt make(Node n);

  std::shared_ptr<const Node> node_;
};

std::uint64_t hash_program(const Program& p);

const char* stmt_kind_name(Stmt::Kind k);

}  // namespace moolts::scpp
