#include "moolts/stmt.hpp"

namespace moolts::scpp {

Stmt Stmt::make(Node n) {
  std::uint64_t h = hash_mix(0x57a7, static_cast<std::uint64_t>(n.kind));
  h = hash_mix(h, static_cast<std::uint64_t>(n.scope));
  h = hash_mix(h, static_cast<std::uint64_t>(n.flag));
  h = hash_mix(h, hash_str(n.id));
  h = hash_mix(h, hash_str(n.id2));
  for (const Expr& e : n.exprs) h = hash_mix(h, e.hash());
  h = hash_mix(h, hash_program(n.body1));
  h = hash_mix(h, hash_program(n.body2));
  for (const VarId& r : n.refs) h = hash_mix(h, hash_str(r));
  n.hash = h;
  return Stmt(std::make_shared<const Node>(std::move(n)));
}

Stmt Stmt::ret(Expr e) {
  Node n;
  n.kind = Kind::Return;
  n.exprs.push_back(std::move(e));
  return make(std::move(n));
}

Stmt Stmt::assign(Scope scope, VarId id, Expr e) {
  Node n;
  n.kind = Kind::Assign;
  n.scope = scope;
  n.id = std::move(id);
  n.exprs.push_back(std::move(e));
  return make(std::move(n));
}

Stmt Stmt::call(VarId result, Expr owner, FuncId func, std::vector<Expr> args, std::vector<VarId> refs) {
  Node n;
  n.kind = Kind::Call;
  n.id = std::move(result);
  n.id2 = std::move(func);
  n.exprs.push_back(std::move(owner));
  for (Expr& a : args) n.exprs.push_back(std::move(a));
  n.refs = std::move(refs);
  return make(std::move(n));
}

Stmt Stmt::ite(Expr cond, Program then_branch, Program else_branch) {
  Node n;
  n.kind = Kind::Ite;
  n.exprs.push_back(std::move(cond));
  n.body1 = std::move(then_branch);
  n.body2 = std::move(else_branch);
  return make(std::move(n));
}

Stmt Stmt::while_loop(Expr cond, Program body) {
  Node n;
  n.kind = Kind::While;
  n.exprs.push_back(std::move(cond));
  n.body1 = std::move(body);
  return make(std::move(n));
}

Stmt Stmt::ref_load(VarId target, Expr ref) {
  Node n;
  n.kind = Kind::RefLoad;
  n.id = std::move(target);
  n.exprs.push_back(std::move(ref));
  return make(std::move(n));
}

Stmt Stmt::ref_assign(Expr target_ref, Expr e) {
  Node n;
  n.kind = Kind::RefAssign;
  n.exprs.push_back(std::move(target_ref));
  n.exprs.push_back(std::move(e));
  return make(std::move(n));
}

Stmt Stmt::jump(FlagKind flag, Label label) {
  Node n;
  n.kind = Kind::Jump;
  n.flag = flag;
  n.id = std::move(label);
  return make(std::move(n));
}

Stmt Stmt::flag(FlagKind flag, Label label) {
  Node n;
  n.kind = Kind::Flag;
  n.flag = flag;
  n.id = std::move(label);
  return make(std::move(n));
}

Stmt Stmt::throw_stmt() {
  Node n;
  n.kind = Kind::Throw;
  return make(std::move(n));
}

Stmt Stmt::catch_handler(Program handler) {
  Node n;
  n.kind = Kind::Catch;
  n.body1 = std::move(handler);
  return make(std::move(n));
}

Stmt Stmt::call_lambda(VarId result, VarId lambda_var, std::vector<Expr> args, std::vector<VarId> refs) {
  Node n;
  n.kind = Kind::CallLambda;
  n.id = std::move(result);
  n.id2 = std::move(lambda_var);
  n.exprs = std::move(args);
  n.refs = std::move(refs);
  return make(std::move(n));
}

std::vector<Expr> Stmt::args() const {
  if (node_->kind == Kind::Call)
    return std::vector<Expr>(node_->exprs.begin() + 1, node_->exprs.end());
  return node_->exprs;  // CallLambda
}

bool operator==(const Stmt& a, const Stmt& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.hash != y.hash) return false;
  if (x.scope != y.scope || x.flag != y.flag || x.id != y.id || x.id2 != y.id2) return false;
  if (x.exprs.size() != y.exprs.size()) return false;
  for (std::size_t i = 0; i < x.exprs.size(); ++i)
    if (!(x.exprs[i] == y.exprs[i])) return false;
  if (!(x.body1 == y.body1) || !(x.body2 == y.body2)) return false;
  return x.refs == y.refs;
}

std::uint64_t hash_program(const Program& p) {
  std::uint64_t h = hash_mix(0x9009, p.size());
  for (const Stmt& s : p) h = hash_mix(h, s.hash());
  return h;
}

const char* stmt_kind_name(Stmt::Kind k) {
  switch (k) {
    case Stmt::Kind::Return: return "return";
    case Stmt::Kind::Assign: return "assign";
    case Stmt::Kind::Call: return "call";
    case Stmt::Kind::Ite: return "ite";
    case Stmt::Kind::While: return "while";
    case Stmt::Kind::RefLoad: return "ref_load";
    case Stmt::Kind::RefAssign: return "ref_assign";
    case Stmt::Kind::Jump: return "jump";
    case Stmt::Kind::Flag: return "flag";
    case Stmt::Kind::Throw: return "throw";
    case Stmt::Kind::Catch: return "catch";
    case Stmt::Kind::CallLambda: return "call_lambda";
  }
  return "?";
}

}  // namespace moolts::scpp
