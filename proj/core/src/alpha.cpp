#include "moolts/alpha.hpp"

#include <map>
#include <string>

namespace moolts::scpp {
namespace {

// Two-way maps keep the renamings bijective.
struct Bijection {
  std::map<std::string, std::string> fwd;
  std::map<std::string, std::string> bwd;

  bool relate(const std::string& a, const std::string& b) {
    auto f = fwd.find(a);
    if (f != fwd.end()) return f->second == b;
    auto g = bwd.find(b);
    if (g != bwd.end()) return false;  // b already taken by another a
    fwd.emplace(a, b);
    bwd.emplace(b, a);
    return true;
  }
};

struct Matcher {
  Bijection vars;
  Bijection labels;

  bool match_var(const VarId& a, const VarId& b) {
    const bool fa = is_fresh_var(a);
    const bool fb = is_fresh_var(b);
    if (fa != fb) return false;
    if (!fa) return a == b;
    return vars.relate(a, b);
  }

  bool match_label(const Label& a, const Label& b) {
    const bool fa = is_fresh_label(a);
    const bool fb = is_fresh_label(b);
    if (fa != fb) return false;
    if (!fa) return a == b;
    return labels.relate(a, b);
  }

  bool match_vars(const std::vector<VarId>& a, const std::vector<VarId>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!match_var(a[i], b[i])) return false;
    return true;
  }

  bool match_value(const Value& a, const Value& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Value::Kind::LocalRef:
        return match_var(a.var(), b.var());
      case Value::Kind::FieldRef:
        return a.proc() == b.proc() && match_var(a.field(), b.field());
      case Value::Kind::OrderedSet: {
        const auto& x = a.elements();
        const auto& y = b.elements();
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
          if (!match_value(x[i], y[i])) return false;
        return true;
      }
      case Value::Kind::Lambda: {
        const auto& x = a.lambda_parts();
        const auto& y = b.lambda_parts();
        if (!match_vars(x.params, y.params) || !match_vars(x.ref_captures, y.ref_captures)) return false;
        if (x.copied.size() != y.copied.size()) return false;
        for (std::size_t i = 0; i < x.copied.size(); ++i) {
          if (!match_var(x.copied[i].first, y.copied[i].first)) return false;
          if (!match_value(x.copied[i].second, y.copied[i].second)) return false;
        }
        return match_program(x.body, y.body);
      }
      default:
        return a == b;
    }
  }

  bool match_expr(const Expr& a, const Expr& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Expr::Kind::Read:
        return a.scope() == b.scope() && match_var(a.var(), b.var());
      case Expr::Kind::Constant:
        return match_value(a.constant_value(), b.constant_value());
      case Expr::Kind::Self:
        return true;
      case Expr::Kind::RefField:
        return match_var(a.field(), b.field()) && match_expr(a.owner(), b.owner());
      case Expr::Kind::Not:
        return match_expr(a.operand(), b.operand());
      case Expr::Kind::InitLambda: {
        const auto& x = a.lambda();
        const auto& y = b.lambda();
        return match_vars(x.params, y.params) && match_vars(x.copies, y.copies) &&
               match_vars(x.refs, y.refs) && match_program(x.body, y.body);
      }
      case Expr::Kind::InitList: {
        const auto& x = a.list();
        const auto& y = b.list();
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
          if (!match_expr(x[i], y[i])) return false;
        return true;
      }
      default:  // binary operators and at
        return match_expr(a.lhs(), b.lhs()) && match_expr(a.rhs(), b.rhs());
    }
  }

  bool match_stmt(const Stmt& a, const Stmt& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Stmt::Kind::Return:
        return match_expr(a.expr(), b.expr());
      case Stmt::Kind::Assign:
        return a.scope() == b.scope() && match_var(a.var(), b.var()) && match_expr(a.expr(), b.expr());
      case Stmt::Kind::Call: {
        if (!match_var(a.result_var(), b.result_var())) return false;
        if (a.func() != b.func()) return false;
        if (!match_expr(a.owner(), b.owner())) return false;
        auto xa = a.args();
        auto xb = b.args();
        if (xa.size() != xb.size()) return false;
        for (std::size_t i = 0; i < xa.size(); ++i)
          if (!match_expr(xa[i], xb[i])) return false;
        return match_vars(a.ref_args(), b.ref_args());
      }
      case Stmt::Kind::Ite:
        return match_expr(a.cond(), b.cond()) && match_program(a.then_branch(), b.then_branch()) &&
               match_program(a.else_branch(), b.else_branch());
      case Stmt::Kind::While:
        return match_expr(a.cond(), b.cond()) && match_program(a.loop_body(), b.loop_body());
      case Stmt::Kind::RefLoad:
        return match_var(a.var(), b.var()) && match_expr(a.expr(), b.expr());
      case Stmt::Kind::RefAssign:
        return match_expr(a.target_ref(), b.target_ref()) && match_expr(a.value_expr(), b.value_expr());
      case Stmt::Kind::Jump:
      case Stmt::Kind::Flag:
        return a.flag_kind() == b.flag_kind() && match_label(a.label(), b.label());
      case Stmt::Kind::Throw:
        return true;
      case Stmt::Kind::Catch:
        return match_program(a.handler(), b.handler());
      case Stmt::Kind::CallLambda: {
        if (!match_var(a.result_var(), b.result_var())) return false;
        if (!match_var(a.lambda_var(), b.lambda_var())) return false;
        auto xa = a.args();
        auto xb = b.args();
        if (xa.size() != xb.size()) return false;
        for (std::size_t i = 0; i < xa.size(); ++i)
          if (!match_expr(xa[i], xb[i])) return false;
        return match_vars(a.ref_args(), b.ref_args());
      }
    }
    return false;
  }

  bool match_program(const Program& a, const Program& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!match_stmt(a[i], b[i])) return false;
    return true;
  }
};

}  // namespace

bool alpha_equal(const Program& a, const Program& b) {
  Matcher m;
  return m.match_program(a, b);
}

}  // namespace moolts::scpp
