#include "moolts/transform.hpp"

#include <cstdint>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace moolts::xform {
namespace {

using moo::Expr;
using moo::MooError;
using moo::SourceLoc;
using moo::Stmt;
using moo::SymbolTable;
using scpp::Label;
using scpp::Program;
using scpp::Scope;
using scpp::Value;
using scpp::VarId;

void append(Program& dst, Program src) {
  dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
}

scpp::Expr gn_const() {
  return scpp::Expr::constant(Value::ptype(std::string(scpp::kGlobalNamespace)));
}

scpp::Expr const_num(std::int64_t n) { return scpp::Expr::constant(Value::number(n)); }

// How a bare identifier resolves from the current block scope outward.
struct LocalInfo {
  bool is_ref = false;
  bool is_lambda = false;
  std::vector<bool> lambda_by_ref;  // call-site flags when is_lambda
};

enum class NameClass { LocalPlain, LocalRef, LocalLambda, Field, Member, EnumLit, GlobalVar, Unknown };

struct EResult {
  Program pre;
  scpp::Expr term;
};

struct AResult {
  Program pre;
  std::vector<scpp::Expr> args;
  std::vector<VarId> refs;
};

struct LabelCtx {
  const Label* break_label = nullptr;     // innermost loop or switch
  const Label* continue_label = nullptr;  // innermost loop
};

class MethodTransformer {
 public:
  MethodTransformer(const SymbolTable& sym, std::string file) : sym_(sym), file_(std::move(file)) {
    scopes_.emplace_back();
  }

  void declare_param(const moo::Param& p) {
    LocalInfo info;
    info.is_ref = p.by_ref;
    scopes_.back().emplace(p.name, std::move(info));
  }

  Program transform_body(const std::vector<Stmt>& body) {
    Program out;
    for (const auto& s : body) append(out, t_s(s, LabelCtx{}));
    return out;
  }

  EResult transform_init(const Expr& e) { return t_e(e); }  // ctor initializers

  bool can_throw() const { return can_throw_; }
  const std::set<std::string>& own_calls() const { return own_calls_; }

 private:
  const SymbolTable& sym_;
  std::string file_;
  std::vector<std::map<std::string, LocalInfo>> scopes_;
  int fv_ = 0;
  int lbl_ = 0;
  bool can_throw_ = false;
  std::set<std::string> own_calls_;  // bare / this-> calls, for the canThrow fixpoint

  [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const {
    throw MooError(file_, loc, msg);
  }

  VarId fresh_var() { return std::string(scpp::kFreshVarPrefix) + std::to_string(fv_++); }
  Label fresh_label() { return std::string(scpp::kFreshLabelPrefix) + std::to_string(lbl_++); }

  NameClass classify(const std::string& id, const LocalInfo** info = nullptr) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(id);
      if (f == it->end()) continue;
      if (info) *info = &f->second;
      if (f->second.is_ref) return NameClass::LocalRef;
      if (f->second.is_lambda) return NameClass::LocalLambda;
      return NameClass::LocalPlain;
    }
    if (sym_.is_field(id)) return NameClass::Field;
    if (sym_.is_member(id)) return NameClass::Member;
    if (sym_.is_enum_lit(id)) return NameClass::EnumLit;
    if (sym_.is_global_var(id)) return NameClass::GlobalVar;
    return NameClass::Unknown;
  }

  Program scoped(const std::vector<Stmt>& body, const LabelCtx& ctx) {
    scopes_.emplace_back();
    Program out;
    try {
      for (const auto& s : body) append(out, t_s(s, ctx));
    } catch (...) {
      scopes_.pop_back();
      throw;
    }
    scopes_.pop_back();
    return out;
  }

  // ---- expressions --------------------------------------------------------

  EResult t_e(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::IntLit:
        return {{}, const_num(e.num)};
      case Expr::Kind::BoolLit:
        return {{}, scpp::Expr::constant(Value::boolean(e.truth))};
      case Expr::Kind::StringLit:
        return {{}, scpp::Expr::constant(Value::string(e.text))};
      case Expr::Kind::This:
        return {{}, scpp::Expr::self()};
      case Expr::Kind::Ident:
        return t_e_ident(e);
      case Expr::Kind::Not: {
        EResult a = t_e(e.kids[0]);
        return {std::move(a.pre), scpp::Expr::negate(std::move(a.term))};
      }
      case Expr::Kind::Binary:
        return t_e_binary(e);
      case Expr::Kind::Ternary: {
        EResult c = t_e(e.kids[0]);
        VarId fv = fresh_var();
        EResult t = t_e(e.kids[1]);
        EResult f = t_e(e.kids[2]);
        Program then_branch = std::move(t.pre);
        then_branch.push_back(scpp::Stmt::assign(Scope::Local, fv, std::move(t.term)));
        Program else_branch = std::move(f.pre);
        else_branch.push_back(scpp::Stmt::assign(Scope::Local, fv, std::move(f.term)));
        Program pre = std::move(c.pre);
        pre.push_back(scpp::Stmt::ite(std::move(c.term), std::move(then_branch), std::move(else_branch)));
        return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
      }
      case Expr::Kind::PostIncr:
        return t_e_post_incr(e);
      case Expr::Kind::Member: {
        EResult o = t_e(e.kids[0]);
        VarId fv = fresh_var();
        Program pre = std::move(o.pre);
        pre.push_back(scpp::Stmt::ref_load(fv, scpp::Expr::ref_field(std::move(o.term), e.text)));
        return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
      }
      case Expr::Kind::Call:
        return t_e_call(e);
      case Expr::Kind::MethodCall:
        return t_e_method_call(e);
      case Expr::Kind::Index: {
        EResult a = t_e(e.kids[0]);
        EResult b = t_e(e.kids[1]);
        Program pre = std::move(a.pre);
        append(pre, std::move(b.pre));
        return {std::move(pre), scpp::Expr::at(std::move(a.term), std::move(b.term))};
      }
      case Expr::Kind::Lambda:
        return t_e_lambda(e);
      case Expr::Kind::InitList: {
        Program pre;
        std::vector<scpp::Expr> elems;
        elems.reserve(e.kids.size());
        for (const auto& k : e.kids) {
          EResult el = t_e(k);
          append(pre, std::move(el.pre));
          elems.push_back(std::move(el.term));
        }
        return {std::move(pre), scpp::Expr::init_list(std::move(elems))};
      }
    }
    fail(e.loc, "unreachable expression kind");
  }

  EResult t_e_ident(const Expr& e) {
    const std::string& id = e.text;
    switch (classify(id)) {
      case NameClass::LocalRef: {
        VarId fv = fresh_var();
        Program pre{scpp::Stmt::ref_load(fv, scpp::Expr::read(Scope::Local, id))};
        return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
      }
      case NameClass::LocalPlain:
      case NameClass::LocalLambda:
        return {{}, scpp::Expr::read(Scope::Local, id)};
      case NameClass::Field:
      case NameClass::Member:
        return {{}, scpp::Expr::read(Scope::Global, id)};
      case NameClass::EnumLit:
        return {{}, scpp::Expr::constant(Value::enum_lit(id))};
      case NameClass::GlobalVar: {
        VarId fv = fresh_var();
        Program pre{scpp::Stmt::ref_load(fv, scpp::Expr::ref_field(gn_const(), id))};
        return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
      }
      case NameClass::Unknown:
        break;
    }
    fail(e.loc, "use of undeclared identifier '" + id + "'");
  }

  EResult t_e_binary(const Expr& e) {
    const std::string& op = e.text;
    if (op == "&&") {
      EResult a = t_e(e.kids[0]);
      VarId fv = fresh_var();
      EResult b = t_e(e.kids[1]);
      Program then_branch = std::move(b.pre);
      then_branch.push_back(scpp::Stmt::assign(Scope::Local, fv, std::move(b.term)));
      Program else_branch{
          scpp::Stmt::assign(Scope::Local, fv, scpp::Expr::constant(Value::boolean(false)))};
      Program pre = std::move(a.pre);
      pre.push_back(scpp::Stmt::ite(std::move(a.term), std::move(then_branch), std::move(else_branch)));
      return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
    }

    EResult a = t_e(e.kids[0]);
    EResult b = t_e(e.kids[1]);
    Program pre = std::move(a.pre);
    append(pre, std::move(b.pre));
    scpp::Expr term = [&]() -> scpp::Expr {
      // '||' is strict: both operand prefixes were emitted unconditionally.
      if (op == "||") return scpp::Expr::logical_or(std::move(a.term), std::move(b.term));
      if (op == "+") return scpp::Expr::plus(std::move(a.term), std::move(b.term));
      if (op == "-") return scpp::Expr::minus(std::move(a.term), std::move(b.term));
      if (op == "*") return scpp::Expr::multiply(std::move(a.term), std::move(b.term));
      if (op == "/") return scpp::Expr::divide(std::move(a.term), std::move(b.term));
      if (op == "==") return scpp::Expr::equals(std::move(a.term), std::move(b.term));
      if (op == "!=") return scpp::Expr::not_equals(std::move(a.term), std::move(b.term));
      if (op == "<") return scpp::Expr::smaller_than(std::move(a.term), std::move(b.term));
      if (op == "<=") return scpp::Expr::smaller_equal(std::move(a.term), std::move(b.term));
      if (op == ">") return scpp::Expr::greater_than(std::move(a.term), std::move(b.term));
      if (op == ">=") return scpp::Expr::greater_equal(std::move(a.term), std::move(b.term));
      fail(e.loc, "unknown operator '" + op + "'");
    }();
    return {std::move(pre), std::move(term)};
  }

  EResult t_e_post_incr(const Expr& e) {
    const Expr& tgt = e.kids[0];
    if (tgt.kind == Expr::Kind::Member) {
      EResult o = t_e(tgt.kids[0]);
      VarId owner_snap = fresh_var();
      VarId fv = fresh_var();
      Program pre = std::move(o.pre);
      pre.push_back(scpp::Stmt::assign(Scope::Local, owner_snap, std::move(o.term)));
      scpp::Expr place = scpp::Expr::ref_field(scpp::Expr::read(Scope::Local, owner_snap), tgt.text);
      pre.push_back(scpp::Stmt::ref_load(fv, place));
      pre.push_back(scpp::Stmt::ref_assign(
          place, scpp::Expr::plus(scpp::Expr::read(Scope::Local, fv), const_num(1))));
      return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
    }

    const std::string& id = tgt.text;
    switch (classify(id)) {
      case NameClass::LocalPlain: {
        VarId fv = fresh_var();
        Program pre{scpp::Stmt::assign(Scope::Local, fv, scpp::Expr::read(Scope::Local, id)),
                    scpp::Stmt::assign(Scope::Local, id,
                                       scpp::Expr::plus(scpp::Expr::read(Scope::Local, id), const_num(1)))};
        return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
      }
      case NameClass::Field:
      case NameClass::Member: {
        VarId fv = fresh_var();
        Program pre{scpp::Stmt::assign(Scope::Local, fv, scpp::Expr::read(Scope::Global, id)),
                    scpp::Stmt::assign(Scope::Global, id,
                                       scpp::Expr::plus(scpp::Expr::read(Scope::Global, id), const_num(1)))};
        return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
      }
      case NameClass::LocalRef: {
        VarId fv = fresh_var();
        scpp::Expr held = scpp::Expr::read(Scope::Local, id);
        Program pre{scpp::Stmt::ref_load(fv, held),
                    scpp::Stmt::ref_assign(
                        held, scpp::Expr::plus(scpp::Expr::read(Scope::Local, fv), const_num(1)))};
        return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
      }
      case NameClass::GlobalVar: {
        VarId fv = fresh_var();
        scpp::Expr place = scpp::Expr::ref_field(gn_const(), id);
        Program pre{scpp::Stmt::ref_load(fv, place),
                    scpp::Stmt::ref_assign(
                        place, scpp::Expr::plus(scpp::Expr::read(Scope::Local, fv), const_num(1)))};
        return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
      }
      case NameClass::LocalLambda:
        fail(tgt.loc, "cannot increment a lambda-typed variable");
      case NameClass::EnumLit:
        fail(tgt.loc, "cannot increment an enumerator");
      case NameClass::Unknown:
        break;
    }
    fail(tgt.loc, "use of undeclared identifier '" + id + "'");
  }

  EResult t_e_call(const Expr& e) {
    std::vector<const Expr*> args;
    for (const auto& k : e.kids) args.push_back(&k);

    // Dispatch order: own-class function, then namespace-scope function, then
    // a lambda-typed local.
    if (sym_.is_target_method(e.text)) {
      const moo::MethodSig* sig = sym_.find_sig(e.text);
      if (!sig->has_body) fail(e.loc, "function '" + e.text + "' has no body");
      own_calls_.insert(e.text);
      AResult a = t_a(sig->by_ref, args, e.text, e.loc);
      VarId fv = fresh_var();
      Program pre = std::move(a.pre);
      pre.push_back(
          scpp::Stmt::call(fv, scpp::Expr::self(), e.text, std::move(a.args), std::move(a.refs)));
      return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
    }
    if (sym_.is_global_func(e.text)) {
      const moo::MethodSig* sig = sym_.find_sig(e.text);
      AResult a = t_a(sig->by_ref, args, e.text, e.loc);
      VarId fv = fresh_var();
      Program pre = std::move(a.pre);
      pre.push_back(scpp::Stmt::call(fv, gn_const(), e.text, std::move(a.args), std::move(a.refs)));
      return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
    }
    const LocalInfo* info = nullptr;
    if (classify(e.text, &info) == NameClass::LocalLambda) {
      AResult a = t_a(info->lambda_by_ref, args, e.text, e.loc);
      VarId fv = fresh_var();
      Program pre = std::move(a.pre);
      pre.push_back(scpp::Stmt::call_lambda(fv, e.text, std::move(a.args), std::move(a.refs)));
      return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
    }
    fail(e.loc, "call of unknown function '" + e.text + "'");
  }

  EResult t_e_method_call(const Expr& e) {
    EResult o = t_e(e.kids[0]);
    const moo::MethodSig* sig = sym_.find_sig(e.text);
    if (!sig) fail(e.loc, "use of unknown function '" + e.text + "'");
    if (e.kids[0].kind == Expr::Kind::This) own_calls_.insert(e.text);
    std::vector<const Expr*> args;
    for (std::size_t i = 1; i < e.kids.size(); ++i) args.push_back(&e.kids[i]);
    AResult a = t_a(sig->by_ref, args, e.text, e.loc);
    VarId fv = fresh_var();
    Program pre = std::move(o.pre);
    append(pre, std::move(a.pre));
    pre.push_back(scpp::Stmt::call(fv, std::move(o.term), e.text, std::move(a.args), std::move(a.refs)));
    return {std::move(pre), scpp::Expr::read(Scope::Local, fv)};
  }

  EResult t_e_lambda(const Expr& e) {
    scpp::LambdaExpr parts;
    std::set<std::string> seen;
    for (const auto& p : e.params) parts.params.push_back(p.name);
    for (const auto& cap : e.captures) {
      if (!seen.insert(cap.name).second) fail(cap.loc, "duplicate capture '" + cap.name + "'");
      for (const auto& p : e.params)
        if (p.name == cap.name) fail(cap.loc, "lambda parameter shadows capture '" + cap.name + "'");
      const LocalInfo* info = nullptr;
      NameClass nc = classify(cap.name, &info);
      if (nc != NameClass::LocalPlain && nc != NameClass::LocalRef && nc != NameClass::LocalLambda)
        fail(cap.loc, "capture '" + cap.name + "' must name a local variable");
      if (cap.by_ref) {
        parts.refs.push_back(cap.name);
      } else {
        if (nc == NameClass::LocalRef)
          fail(cap.loc, "cannot copy-capture the reference variable '" + cap.name + "'");
        parts.copies.push_back(cap.name);
      }
    }

    // The body transforms in its own scope universe: parameters and captures
    // only, on top of fields/enumerators/functions. Fresh counters are shared
    // with the enclosing method.
    std::vector<std::map<std::string, LocalInfo>> saved;
    saved.swap(scopes_);
    scopes_.emplace_back();
    for (const auto& p : e.params) declare_param(p);
    for (const auto& cap : e.captures) {
      LocalInfo info;
      if (cap.by_ref) {
        info.is_ref = true;
      } else {
        const LocalInfo* outer = nullptr;
        for (auto it = saved.rbegin(); it != saved.rend() && !outer; ++it)
          if (auto f = it->find(cap.name); f != it->end()) outer = &f->second;
        if (outer && outer->is_lambda) {  // a copied lambda stays callable
          info.is_lambda = true;
          info.lambda_by_ref = outer->lambda_by_ref;
        }
      }
      scopes_.back().emplace(cap.name, std::move(info));
    }

    Program body;
    try {
      for (const auto& s : e.body) append(body, t_s(s, LabelCtx{}));
    } catch (...) {
      scopes_.swap(saved);
      throw;
    }
    scopes_.swap(saved);
    parts.body = std::move(body);
    return {{}, scpp::Expr::init_lambda(std::move(parts))};
  }

  // ---- arguments -----------------------------------------------------------

  AResult t_a(const std::vector<bool>& by_ref, const std::vector<const Expr*>& args,
              const std::string& func, SourceLoc loc) {
    if (by_ref.size() != args.size())
      fail(loc, "'" + func + "' expects " + std::to_string(by_ref.size()) + " arguments, got " +
                    std::to_string(args.size()));
    AResult out;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const Expr& arg = *args[i];
      if (!by_ref[i]) {
        EResult v = t_e(arg);
        append(out.pre, std::move(v.pre));
        out.args.push_back(std::move(v.term));
        continue;
      }
      switch (arg.kind) {
        case Expr::Kind::Ident: {
          const std::string& id = arg.text;
          switch (classify(id)) {
            case NameClass::LocalPlain:
            case NameClass::LocalRef:
            case NameClass::LocalLambda:
              out.args.push_back(scpp::Expr::constant(Value::local_ref(id)));
              out.refs.push_back(id);
              continue;
            case NameClass::Field:
            case NameClass::Member:
              out.args.push_back(scpp::Expr::ref_field(scpp::Expr::self(), id));
              continue;
            case NameClass::EnumLit:
              out.args.push_back(scpp::Expr::constant(Value::enum_lit(id)));
              continue;
            case NameClass::GlobalVar:
              out.args.push_back(scpp::Expr::ref_field(gn_const(), id));
              continue;
            case NameClass::Unknown:
              fail(arg.loc, "use of undeclared identifier '" + id + "'");
          }
          continue;
        }
        case Expr::Kind::Member: {
          EResult o = t_e(arg.kids[0]);
          VarId fv = fresh_var();
          append(out.pre, std::move(o.pre));
          out.pre.push_back(scpp::Stmt::assign(Scope::Local, fv, std::move(o.term)));
          out.args.push_back(
              scpp::Expr::ref_field(scpp::Expr::read(Scope::Local, fv), arg.text));
          continue;
        }
        case Expr::Kind::IntLit:
        case Expr::Kind::BoolLit:
        case Expr::Kind::StringLit:
        case Expr::Kind::InitList:
        case Expr::Kind::Lambda:
          fail(arg.loc, "cannot pass a literal by reference");
        default: {
          EResult v = t_e(arg);
          append(out.pre, std::move(v.pre));
          out.args.push_back(std::move(v.term));
        }
      }
    }
    return out;
  }

  // ---- statements ----------------------------------------------------------

  Program t_s(const Stmt& s, const LabelCtx& ctx) {
    switch (s.kind) {
      case Stmt::Kind::Block:
        return scoped(s.body1, ctx);
      case Stmt::Kind::VarDecl:
        return t_s_var_decl(s);
      case Stmt::Kind::ExprStmt:
        return t_e(s.exprs[0]).pre;
      case Stmt::Kind::Assign:
        return t_s_assign(s);
      case Stmt::Kind::If: {
        EResult c = t_e(s.exprs[0]);
        Program out = std::move(c.pre);
        out.push_back(scpp::Stmt::ite(std::move(c.term), scoped(s.body1, ctx), scoped(s.body2, ctx)));
        return out;
      }
      case Stmt::Kind::While: {
        Label l = fresh_label();
        EResult c = t_e(s.exprs[0]);
        LabelCtx inner{&l, &l};
        Program body = scoped(s.body1, inner);
        body.push_back(scpp::Stmt::flag(scpp::FlagKind::Continue, l));
        append(body, c.pre);  // the condition prefix re-runs before re-testing
        Program out = std::move(c.pre);
        out.push_back(scpp::Stmt::while_loop(std::move(c.term), std::move(body)));
        out.push_back(scpp::Stmt::flag(scpp::FlagKind::Break, l));
        return out;
      }
      case Stmt::Kind::For: {
        scopes_.emplace_back();  // init-clause scope
        Program out;
        try {
          for (const auto& p : s.pre) append(out, t_s(p, LabelCtx{}));
          Label l = fresh_label();
          EResult c = s.has_cond ? t_e(s.exprs[0])
                                 : EResult{{}, scpp::Expr::constant(Value::boolean(true))};
          LabelCtx inner{&l, &l};
          Program body = scoped(s.body1, inner);
          body.push_back(scpp::Stmt::flag(scpp::FlagKind::Continue, l));
          for (const auto& p : s.post) append(body, t_s(p, LabelCtx{}));  // continue lands here
          append(body, c.pre);
          append(out, c.pre);
          out.push_back(scpp::Stmt::while_loop(std::move(c.term), std::move(body)));
          out.push_back(scpp::Stmt::flag(scpp::FlagKind::Break, l));
        } catch (...) {
          scopes_.pop_back();
          throw;
        }
        scopes_.pop_back();
        return out;
      }
      case Stmt::Kind::Switch:
        return t_s_switch(s, ctx);
      case Stmt::Kind::Continue:
        if (!ctx.continue_label) fail(s.loc, "'continue' used outside of a loop");
        return {scpp::Stmt::jump(scpp::FlagKind::Continue, *ctx.continue_label)};
      case Stmt::Kind::Break:
        if (!ctx.break_label) fail(s.loc, "'break' used outside of a loop or switch");
        return {scpp::Stmt::jump(scpp::FlagKind::Break, *ctx.break_label)};
      case Stmt::Kind::Return: {
        if (s.exprs.empty()) return {scpp::Stmt::ret(scpp::Expr::constant(Value::void_value()))};
        EResult v = t_e(s.exprs[0]);
        Program out = std::move(v.pre);
        out.push_back(scpp::Stmt::ret(std::move(v.term)));
        return out;
      }
      case Stmt::Kind::Try: {
        Program out = scoped(s.body1, ctx);
        out.push_back(scpp::Stmt::catch_handler(scoped(s.body2, ctx)));
        return out;
      }
      case Stmt::Kind::Throw: {
        can_throw_ = true;
        Program out;
        if (!s.exprs.empty()) out = t_e(s.exprs[0]).pre;  // payload evaluates, then is discarded
        out.push_back(scpp::Stmt::throw_stmt());
        return out;
      }
    }
    fail(s.loc, "unreachable statement kind");
  }

  Program t_s_var_decl(const Stmt& s) {
    for (const auto& scope : scopes_)
      if (scope.count(s.name)) fail(s.loc, "redeclaration of '" + s.name + "'");
    if (sym_.is_enum_lit(s.name)) fail(s.loc, "'" + s.name + "' is ambiguous with an enumerator");
    if (scpp::has_reserved_prefix(s.name)) fail(s.loc, "'" + s.name + "' uses a reserved prefix");

    if (s.by_ref) {
      Program out = t_ref_init(s);
      LocalInfo info;
      info.is_ref = true;
      scopes_.back().emplace(s.name, std::move(info));
      return out;
    }

    LocalInfo info;
    Program out;
    if (s.has_init) {
      const Expr& init = s.exprs[0];
      if (init.kind == Expr::Kind::Lambda) {
        info.is_lambda = true;
        for (const auto& p : init.params) info.lambda_by_ref.push_back(p.by_ref);
      } else if (init.kind == Expr::Kind::Ident) {
        const LocalInfo* src = nullptr;
        if (classify(init.text, &src) == NameClass::LocalLambda) {
          info.is_lambda = true;
          info.lambda_by_ref = src->lambda_by_ref;
        }
      }
      EResult v = t_e(init);
      out = std::move(v.pre);
      out.push_back(scpp::Stmt::assign(Scope::Local, s.name, std::move(v.term)));
    }
    // A bare declaration vanishes: locals default to void.
    scopes_.back().emplace(s.name, std::move(info));
    return out;
  }

  Program t_ref_init(const Stmt& s) {
    const Expr& init = s.exprs[0];
    const std::string& r = s.name;
    if (init.kind == Expr::Kind::Ident) {
      const std::string& id = init.text;
      switch (classify(id)) {
        case NameClass::LocalPlain:
        case NameClass::LocalLambda:
          fail(init.loc, "a reference cannot alias a plain local variable of the same frame");
        case NameClass::LocalRef:
          return {scpp::Stmt::assign(Scope::Local, r, scpp::Expr::read(Scope::Local, id))};
        case NameClass::Field:
        case NameClass::Member:
          return {scpp::Stmt::assign(Scope::Local, r,
                                     scpp::Expr::ref_field(scpp::Expr::self(), id))};
        case NameClass::GlobalVar:
          return {scpp::Stmt::assign(Scope::Local, r, scpp::Expr::ref_field(gn_const(), id))};
        case NameClass::EnumLit:
          return {scpp::Stmt::assign(Scope::Local, r, scpp::Expr::constant(Value::enum_lit(id)))};
        case NameClass::Unknown:
          fail(init.loc, "use of undeclared identifier '" + id + "'");
      }
    }
    if (init.kind == Expr::Kind::Member) {
      EResult o = t_e(init.kids[0]);
      VarId fv = fresh_var();
      Program out = std::move(o.pre);
      out.push_back(scpp::Stmt::assign(Scope::Local, fv, std::move(o.term)));
      out.push_back(scpp::Stmt::assign(
          Scope::Local, r,
          scpp::Expr::ref_field(scpp::Expr::read(Scope::Local, fv), init.text)));
      return out;
    }
    if (init.kind == Expr::Kind::IntLit || init.kind == Expr::Kind::BoolLit ||
        init.kind == Expr::Kind::StringLit || init.kind == Expr::Kind::InitList ||
        init.kind == Expr::Kind::Lambda)
      fail(init.loc, "cannot bind a reference to a literal");
    // Degenerate reference: holds the value, reads pass through.
    EResult v = t_e(init);
    Program out = std::move(v.pre);
    out.push_back(scpp::Stmt::assign(Scope::Local, r, std::move(v.term)));
    return out;
  }

  Program t_s_assign(const Stmt& s) {
    const Expr& target = s.exprs[0];
    if (target.kind == Expr::Kind::Member) {
      EResult o = t_e(target.kids[0]);
      EResult v = t_e(s.exprs[1]);
      Program out = std::move(o.pre);
      append(out, std::move(v.pre));
      out.push_back(scpp::Stmt::ref_assign(scpp::Expr::ref_field(std::move(o.term), target.text),
                                           std::move(v.term)));
      return out;
    }
    const std::string& id = target.text;
    switch (classify(id)) {
      case NameClass::LocalRef: {
        EResult v = t_e(s.exprs[1]);
        Program out = std::move(v.pre);
        out.push_back(
            scpp::Stmt::ref_assign(scpp::Expr::read(Scope::Local, id), std::move(v.term)));
        return out;
      }
      case NameClass::LocalPlain: {
        EResult v = t_e(s.exprs[1]);
        Program out = std::move(v.pre);
        out.push_back(scpp::Stmt::assign(Scope::Local, id, std::move(v.term)));
        return out;
      }
      case NameClass::LocalLambda:
        fail(s.loc, "lambda-typed locals may not be reassigned");
      case NameClass::Field:
      case NameClass::Member: {
        EResult v = t_e(s.exprs[1]);
        Program out = std::move(v.pre);
        out.push_back(scpp::Stmt::assign(Scope::Global, id, std::move(v.term)));
        return out;
      }
      case NameClass::EnumLit:
        fail(s.loc, "cannot assign to enumerator '" + id + "'");
      case NameClass::GlobalVar: {
        EResult v = t_e(s.exprs[1]);
        Program out = std::move(v.pre);
        out.push_back(
            scpp::Stmt::ref_assign(scpp::Expr::ref_field(gn_const(), id), std::move(v.term)));
        return out;
      }
      case NameClass::Unknown:
        break;
    }
    fail(s.loc, "use of undeclared identifier '" + id + "'");
  }

  Program t_s_switch(const Stmt& s, const LabelCtx& ctx) {
    Label l = fresh_label();
    EResult e = t_e(s.exprs[0]);
    VarId fv = fresh_var();
    Program out = std::move(e.pre);
    out.push_back(scpp::Stmt::assign(Scope::Local, fv, std::move(e.term)));

    LabelCtx inner{&l, ctx.continue_label};
    scopes_.emplace_back();  // one scope across the fallthrough chain
    std::vector<Program> bodies;
    std::vector<scpp::Expr> guards;  // empty slot for the default
    std::vector<bool> is_default;
    try {
      for (const auto& c : s.cases) {
        for (const auto& st : c.body)
          if (st.kind == Stmt::Kind::VarDecl)
            fail(st.loc, "declarations in a case body must be wrapped in a block");
        Program body;
        for (const auto& st : c.body) append(body, t_s(st, inner));
        bodies.push_back(std::move(body));
        is_default.push_back(c.is_default);
        guards.push_back(c.is_default ? scpp::Expr::self() : case_guard(c.label, fv));
      }
    } catch (...) {
      scopes_.pop_back();
      throw;
    }
    scopes_.pop_back();

    // Cascade built back-to-front; each chain falls through the remaining
    // bodies and then jumps past the final break flag.
    auto chain_from = [&](std::size_t i) {
      Program chain;
      for (std::size_t j = i; j < bodies.size(); ++j) append(chain, bodies[j]);
      chain.push_back(scpp::Stmt::jump(scpp::FlagKind::Break, l));
      return chain;
    };
    Program cascade;
    for (std::size_t k = s.cases.size(); k-- > 0;) {
      if (is_default[k]) {
        cascade = chain_from(k);
        continue;
      }
      Program chain = chain_from(k);
      Program next = std::move(cascade);
      cascade.clear();
      cascade.push_back(scpp::Stmt::ite(guards[k], std::move(chain), std::move(next)));
    }
    append(out, std::move(cascade));
    out.push_back(scpp::Stmt::flag(scpp::FlagKind::Break, l));
    return out;
  }

  scpp::Expr case_guard(const Expr& label, const VarId& scrutinee) {
    Value v;
    switch (label.kind) {
      case Expr::Kind::IntLit:
        v = Value::number(label.num);
        break;
      case Expr::Kind::BoolLit:
        v = Value::boolean(label.truth);
        break;
      case Expr::Kind::StringLit:
        v = Value::string(label.text);
        break;
      case Expr::Kind::Ident:
        if (!sym_.is_enum_lit(label.text)) fail(label.loc, "case label must be a constant");
        v = Value::enum_lit(label.text);
        break;
      default:
        fail(label.loc, "case label must be a constant");
    }
    return scpp::Expr::equals(scpp::Expr::read(Scope::Local, scrutinee), scpp::Expr::constant(v));
  }
};

scpp::Value::Kind value_kind_of(const moo::Type& t, SourceLoc loc, const std::string& file) {
  switch (t.kind) {
    case moo::Type::Kind::Int:
      return Value::Kind::Number;
    case moo::Type::Kind::Bool:
      return Value::Kind::Boolean;
    case moo::Type::Kind::Void:
      return Value::Kind::Void;
    case moo::Type::Kind::String:
      return Value::Kind::String;
    case moo::Type::Kind::List:
      return Value::Kind::OrderedSet;
    case moo::Type::Kind::Named:
      return t.pointer ? Value::Kind::PType : Value::Kind::Enum;
    case moo::Type::Kind::Auto:
      break;
  }
  throw MooError(file, loc, "cannot infer a value type for 'auto' here");
}

}  // namespace

ClassModel transform_class(const moo::TranslationUnit& tu, const std::string& target,
                           const std::string& filename) {
  SymbolTable sym = SymbolTable::build(tu, target, filename);

  ClassModel model;
  model.class_name = target;
  model.fields = sym.fields();
  model.members = sym.members();
  model.enums = sym.enums();

  const moo::ClassDecl* cd = nullptr;
  for (const auto& c : tu.classes)
    if (c.name == target) cd = &c;

  std::map<std::string, std::set<std::string>> own_calls;
  for (const auto& m : cd->methods) {
    std::vector<VarId> names;
    std::vector<bool> flags;
    for (const auto& p : m.params) {
      names.push_back(p.name);
      flags.push_back(p.by_ref);
    }
    model.param_names.emplace(m.name, std::move(names));
    model.by_ref.emplace(m.name, std::move(flags));
    MethodMeta meta;
    try {
      meta.return_kind = value_kind_of(m.return_type, m.loc, filename);
    } catch (const MooError& err) {
      model.diagnostics.push_back({m.name, err.where(), err.what()});
      continue;
    }
    if (!m.has_body) {
      model.meta.emplace(m.name, meta);
      continue;
    }
    try {
      MethodTransformer t(sym, filename);
      for (const auto& p : m.params) t.declare_param(p);
      Program prog = t.transform_body(m.body);
      meta.can_throw = t.can_throw();
      own_calls[m.name] = t.own_calls();
      model.get_prog.emplace(m.name, std::move(prog));
      model.meta.emplace(m.name, meta);
    } catch (const MooError& err) {
      model.diagnostics.push_back({m.name, err.where(), err.what()});
    }
  }

  // canThrow closes over own-class calls (cross-class throwing is a boundary
  // configuration concern, not inferable here).
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& [name, meta] : model.meta) {
      if (meta.can_throw) continue;
      auto calls = own_calls.find(name);
      if (calls == own_calls.end()) continue;
      for (const auto& callee : calls->second) {
        auto it = model.meta.find(callee);
        if (it != model.meta.end() && it->second.can_throw) {
          meta.can_throw = true;
          changed = true;
          break;
        }
      }
    }
  }

  if (cd->ctors.size() > 1) {
    MooError err(filename, cd->ctors[1].loc, "multiple constructors are not supported");
    model.diagnostics.push_back({"<ctor>", err.where(), err.what()});
  } else if (cd->ctors.size() == 1) {
    const moo::MethodDecl& ctor = cd->ctors[0];
    try {
      MethodTransformer t(sym, filename);
      for (const auto& p : ctor.params) t.declare_param(p);
      Program prog;
      for (const auto& init : ctor.inits) {
        if (sym.is_member(init.field)) continue;  // wiring comes from the configuration
        if (!sym.is_field(init.field))
          throw MooError(filename, init.loc, "no field named '" + init.field + "'");
        EResult v = t.transform_init(init.value);
        append(prog, std::move(v.pre));
        prog.push_back(scpp::Stmt::assign(Scope::Global, init.field, std::move(v.term)));
      }
      append(prog, t.transform_body(ctor.body));
      model.ctor_prog = std::move(prog);
    } catch (const MooError& err) {
      model.diagnostics.push_back({"<ctor>", err.where(), err.what()});
    }
  }

  return model;
}

}  // namespace moolts::xform
