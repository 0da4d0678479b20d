#include "moolts/sem_step.hpp"

#include <set>
#include <string>
#include <utility>

#include "moolts/sem_eval.hpp"

namespace moolts::sem {
namespace {

using scpp::Expr;
using scpp::Lra;
using scpp::Program;
using scpp::Stmt;
using scpp::Value;
using scpp::VarId;

StackFrame& top(ProcessState& ps) { return ps.frames.back(); }
const StackFrame& top(const ProcessState& ps) { return ps.frames.back(); }

ProcessState pop_stmt(ProcessState ps) {
  auto& prog = top(ps).prog;
  prog.erase(prog.begin());
  return ps;
}

// prog := prefix ++ tl(prog)
void replace_head(Program& prog, const Program& prefix, bool keep_head) {
  if (!keep_head) prog.erase(prog.begin());
  prog.insert(prog.begin(), prefix.begin(), prefix.end());
}

Sigma init_sigma_l(const ProcDef& def, const scpp::FuncId& f, const std::vector<Value>& vs) {
  auto names = def.param_names.find(f);
  if (names == def.param_names.end()) throw EngineError("unknown function '" + f + "'");
  if (names->second.size() != vs.size())
    throw EngineError("'" + f + "' expects " + std::to_string(names->second.size()) +
                      " arguments, got " + std::to_string(vs.size()));
  Sigma sigma;
  for (std::size_t i = 0; i < vs.size(); ++i) sigma_set(sigma, names->second[i], vs[i]);
  return sigma;
}

const Program& prog_of(const ProcDef& def, const scpp::FuncId& f) {
  auto it = def.get_prog.find(f);
  if (it == def.get_prog.end()) throw EngineError("unknown function '" + f + "'");
  return it->second;
}

// Appendix-A jump scan: drop everything up to and including the matching flag.
Program jump_to(scpp::FlagKind flag, const scpp::Label& label, const Program& prog) {
  for (std::size_t i = 0; i < prog.size(); ++i) {
    if (prog[i].is(Stmt::Kind::Flag) && prog[i].flag_kind() == flag && prog[i].label() == label)
      return Program(prog.begin() + static_cast<std::ptrdiff_t>(i) + 1, prog.end());
  }
  throw EngineError(std::string("unmatched jump to ") +
                    (flag == scpp::FlagKind::Break ? "break" : "continue") + " '" + label + "'");
}

// Writebacks applied whenever a frame is popped (normally or while throwing)
// or a cross-process response arrives: plain bindings receive the final LRA
// values, bindings that are themselves references chase one hop outward.
void apply_writebacks(const Lra& lras, Sigma& sigma_l, Lra& refs) {
  sigma_l = ret_refs_sigma(lras, std::move(sigma_l));
  refs = ret_refs_r(lras, sigma_l, std::move(refs));
}

// P_return: value v leaves the current frame.
Move do_return(ProcessState ps, const Value& v) {
  if (ps.frames.size() == 1) {
    Move m;
    m.kind = Move::Kind::ReturnOut;
    m.func = ps.external;
    m.value = v;
    m.lras = top(ps).refs;
    ProcessState next;
    next.proc = ps.proc;
    next.sigma_g = std::move(ps.sigma_g);
    m.next = std::move(next);
    return m;
  }
  StackFrame popped = std::move(ps.frames.back());
  ps.frames.pop_back();
  StackFrame& caller = top(ps);
  if (popped.result_var) sigma_set(caller.sigma_l, *popped.result_var, v);
  apply_writebacks(popped.refs, caller.sigma_l, caller.refs);
  Move m;
  m.kind = Move::Kind::Tau;
  m.next = std::move(ps);
  return m;
}

Move tau_to(ProcessState ps) {
  Move m;
  m.kind = Move::Kind::Tau;
  m.next = std::move(ps);
  return m;
}

// Field access reached through a reference: own fields short-circuit to the
// global store, foreign fields communicate.
Move field_load(ProcessState ps, const VarId& to, const scpp::ProcId& owner, const VarId& field) {
  if (owner == ps.proc) {
    ProcessState next = pop_stmt(std::move(ps));
    Value v = sigma_get(next.sigma_g, field);
    sigma_set(top(next).sigma_l, to, std::move(v));
    return tau_to(std::move(next));
  }
  Move m;
  m.kind = Move::Kind::LoadOut;
  m.peer = owner;
  m.field = field;
  m.next = std::move(ps);  // unchanged; resume_load finishes the statement
  return m;
}

Move field_store(ProcessState ps, const scpp::ProcId& owner, const VarId& field, const Value& v) {
  if (owner == ps.proc) {
    ProcessState next = pop_stmt(std::move(ps));
    sigma_set(next.sigma_g, field, v);
    return tau_to(std::move(next));
  }
  Move m;
  m.kind = Move::Kind::StoreOut;
  m.peer = owner;
  m.field = field;
  m.value = v;
  m.next = pop_stmt(std::move(ps));
  return m;
}

Move step_throwing(ProcessState ps) {
  const Program& prog = top(ps).prog;
  for (std::size_t i = 0; i < prog.size(); ++i) {
    if (!prog[i].is(Stmt::Kind::Catch)) continue;
    // caught: continue with the handler followed by the remainder
    Program next_prog = prog[i].handler();
    next_prog.insert(next_prog.end(), prog.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                     prog.end());
    top(ps).prog = std::move(next_prog);
    ps.mode = ProcessState::Mode::Processing;
    return tau_to(std::move(ps));
  }
  // framebreak
  if (ps.frames.size() == 1) {
    Move m;
    m.kind = Move::Kind::ThrowOut;
    m.func = ps.external;
    m.lras = top(ps).refs;
    ProcessState next;
    next.proc = ps.proc;
    next.sigma_g = std::move(ps.sigma_g);
    m.next = std::move(next);
    return m;
  }
  StackFrame popped = std::move(ps.frames.back());
  ps.frames.pop_back();
  StackFrame& caller = top(ps);
  apply_writebacks(popped.refs, caller.sigma_l, caller.refs);
  return tau_to(std::move(ps));  // still Throwing
}

Move step_head(const ProcDef& def, ProcessState ps) {
  const StackFrame& fr = top(ps);
  if (fr.prog.empty()) return do_return(std::move(ps), Value::void_value());

  const Stmt head = fr.prog.front();
  EvalCtx ctx{ps.proc, fr.sigma_l, ps.sigma_g};

  switch (head.kind()) {
    case Stmt::Kind::Return:
      return do_return(std::move(ps), eval_expr(head.expr(), ctx));

    case Stmt::Kind::Assign: {
      Value v = eval_expr(head.expr(), ctx);
      ProcessState next = pop_stmt(std::move(ps));
      if (head.scope() == scpp::Scope::Local) {
        sigma_set(top(next).sigma_l, head.var(), std::move(v));
      } else {
        sigma_set(next.sigma_g, head.var(), std::move(v));
      }
      return tau_to(std::move(next));
    }

    case Stmt::Kind::Ite: {
      Value c = eval_expr(head.cond(), ctx);
      if (!c.is(Value::Kind::Boolean))
        throw EngineError("ite condition is not a boolean: " + scpp::render_value(c));
      ProcessState next = std::move(ps);
      replace_head(top(next).prog, c.boolean_value() ? head.then_branch() : head.else_branch(),
                   /*keep_head=*/false);
      return tau_to(std::move(next));
    }

    case Stmt::Kind::While: {
      Value c = eval_expr(head.cond(), ctx);
      if (!c.is(Value::Kind::Boolean))
        throw EngineError("while condition is not a boolean: " + scpp::render_value(c));
      ProcessState next = std::move(ps);
      if (c.boolean_value()) {
        replace_head(top(next).prog, head.loop_body(), /*keep_head=*/true);
      } else {
        top(next).prog.erase(top(next).prog.begin());
      }
      return tau_to(std::move(next));
    }

    case Stmt::Kind::Call: {
      Value owner = eval_expr(head.owner(), ctx);
      if (!owner.is(Value::Kind::PType))
        throw EngineError("call owner is not a process reference: " + scpp::render_value(owner));
      std::vector<Value> vs;
      for (const auto& a : head.args()) vs.push_back(eval_expr(a, ctx));
      Lra lras = frame_lras(head.ref_args(), fr.sigma_l, fr.refs);
      if (owner.proc() == ps.proc) {
        const Program& body = prog_of(def, head.func());
        Sigma sigma_l = init_sigma_l(def, head.func(), vs);
        ProcessState next = pop_stmt(std::move(ps));
        next.frames.push_back(
            StackFrame{body, head.result_var(), std::move(sigma_l), std::move(lras)});
        return tau_to(std::move(next));
      }
      Move m;
      m.kind = Move::Kind::CallOut;
      m.peer = owner.proc();
      m.func = head.func();
      m.args = std::move(vs);
      m.lras = std::move(lras);
      ProcessState next = pop_stmt(std::move(ps));
      next.mode = ProcessState::Mode::AwaitingReturn;
      next.await_callee = m.peer;
      next.await_func = m.func;
      next.await_result = head.result_var();
      m.next = std::move(next);
      return m;
    }

    case Stmt::Kind::RefLoad: {
      Value r = eval_expr(head.expr(), ctx);
      if (r.is(Value::Kind::FieldRef)) return field_load(std::move(ps), head.var(), r.proc(), r.field());
      if (r.is(Value::Kind::LocalRef)) {
        const Value held = read_lra(r.var(), fr.refs);
        if (held.is(Value::Kind::FieldRef))
          return field_load(std::move(ps), head.var(), held.proc(), held.field());
        if (held.is(Value::Kind::LocalRef))
          throw EngineError("nested local reference in LRAs for '" + r.var() + "'");
        ProcessState next = pop_stmt(std::move(ps));
        sigma_set(top(next).sigma_l, head.var(), held);
        return tau_to(std::move(next));
      }
      // degenerate reference: the held value passes through
      ProcessState next = pop_stmt(std::move(ps));
      sigma_set(top(next).sigma_l, head.var(), std::move(r));
      return tau_to(std::move(next));
    }

    case Stmt::Kind::RefAssign: {
      Value r = eval_expr(head.target_ref(), ctx);
      Value v = eval_expr(head.value_expr(), ctx);
      if (r.is(Value::Kind::FieldRef)) return field_store(std::move(ps), r.proc(), r.field(), v);
      if (r.is(Value::Kind::LocalRef)) {
        const Value held = read_lra(r.var(), fr.refs);
        if (held.is(Value::Kind::FieldRef))
          return field_store(std::move(ps), held.proc(), held.field(), v);
        if (held.is(Value::Kind::LocalRef))
          throw EngineError("nested local reference in LRAs for '" + r.var() + "'");
        ProcessState next = pop_stmt(std::move(ps));
        top(next).refs = update_lra(r.var(), v, std::move(top(next).refs));
        return tau_to(std::move(next));
      }
      throw EngineError("assignment through a non-reference value: " + scpp::render_value(r));
    }

    case Stmt::Kind::Jump: {
      ProcessState next = std::move(ps);
      Program& prog = top(next).prog;
      Program rest(prog.begin() + 1, prog.end());
      prog = jump_to(head.flag_kind(), head.label(), rest);
      return tau_to(std::move(next));
    }

    case Stmt::Kind::Flag:
      return tau_to(pop_stmt(std::move(ps)));

    case Stmt::Kind::Throw: {
      ProcessState next = pop_stmt(std::move(ps));
      next.mode = ProcessState::Mode::Throwing;
      return tau_to(std::move(next));
    }

    case Stmt::Kind::Catch:
      // reached without a pending throw: skipped
      return tau_to(pop_stmt(std::move(ps)));

    case Stmt::Kind::CallLambda: {
      const Value lam = sigma_get(fr.sigma_l, head.lambda_var());
      if (!lam.is(Value::Kind::Lambda))
        throw EngineError("called value is not a lambda: '" + head.lambda_var() + "'");
      const scpp::LambdaParts& parts = lam.lambda_parts();
      std::vector<Expr> arg_exprs = head.args();
      if (parts.params.size() != arg_exprs.size())
        throw EngineError("lambda expects " + std::to_string(parts.params.size()) +
                          " arguments, got " + std::to_string(arg_exprs.size()));
      Sigma sigma_l;
      std::set<VarId> param_set(parts.params.begin(), parts.params.end());
      for (std::size_t i = 0; i < arg_exprs.size(); ++i)
        sigma_set(sigma_l, parts.params[i], eval_expr(arg_exprs[i], ctx));
      for (const auto& r : parts.ref_captures) sigma_set(sigma_l, r, Value::local_ref(r));
      // captured copies reinstated; parameters win on collision
      for (auto it = parts.copied.rbegin(); it != parts.copied.rend(); ++it)
        if (!param_set.count(it->first)) sigma_set(sigma_l, it->first, it->second);

      std::vector<VarId> ref_names = parts.ref_captures;
      ref_names.insert(ref_names.end(), head.ref_args().begin(), head.ref_args().end());
      Lra refs = frame_lras(ref_names, fr.sigma_l, fr.refs);

      ProcessState next = pop_stmt(std::move(ps));
      next.frames.push_back(
          StackFrame{parts.body, head.result_var(), std::move(sigma_l), std::move(refs)});
      return tau_to(std::move(next));
    }
  }
  throw EngineError("unreachable statement kind");
}

}  // namespace

Lra frame_lras(const std::vector<VarId>& refs, const Sigma& sigma_l, const Lra& caller_refs) {
  Lra out;
  out.reserve(refs.size());
  for (const auto& id : refs) {
    const Value& v = sigma_get(sigma_l, id);
    if (v.is(Value::Kind::LocalRef)) {
      out.emplace_back(id, read_lra(v.var(), caller_refs));
    } else {
      out.emplace_back(id, v);
    }
  }
  return out;
}

std::optional<Move> step_process(const ProcDef& def, const ProcessState& ps) {
  switch (ps.mode) {
    case ProcessState::Mode::Stable:
    case ProcessState::Mode::AwaitingReturn:
      return std::nullopt;
    case ProcessState::Mode::Throwing:
      return step_throwing(ps);
    case ProcessState::Mode::Processing:
      return step_head(def, ps);
  }
  return std::nullopt;
}

ProcessState resume_load(const ProcessState& ps, const Value& v) {
  if (!ps.is_busy() || top(ps).prog.empty() || !top(ps).prog.front().is(Stmt::Kind::RefLoad))
    throw EngineError("resume_load on a process not blocked on a load");
  const VarId to = top(ps).prog.front().var();
  ProcessState next = pop_stmt(ps);
  sigma_set(top(next).sigma_l, to, v);
  return next;
}

ProcessState resume_return(const ProcessState& ps, const Value& v, const Lra& lras) {
  if (ps.mode != ProcessState::Mode::AwaitingReturn)
    throw EngineError("resume_return on a process not awaiting a response");
  ProcessState next = ps;
  next.mode = ProcessState::Mode::Processing;
  StackFrame& fr = top(next);
  if (next.await_result) sigma_set(fr.sigma_l, *next.await_result, v);
  apply_writebacks(lras, fr.sigma_l, fr.refs);
  next.await_callee.clear();
  next.await_func.clear();
  next.await_result.reset();
  return next;
}

ProcessState resume_throw(const ProcessState& ps, const Lra& lras) {
  if (ps.mode != ProcessState::Mode::AwaitingReturn)
    throw EngineError("resume_throw on a process not awaiting a response");
  ProcessState next = ps;
  next.mode = ProcessState::Mode::Throwing;
  StackFrame& fr = top(next);
  apply_writebacks(lras, fr.sigma_l, fr.refs);
  next.await_callee.clear();
  next.await_func.clear();
  next.await_result.reset();
  return next;
}

ProcessState respond_call(const ProcDef& def, const ProcessState& ps, const scpp::FuncId& f,
                          const std::vector<Value>& vs, const Lra& lras) {
  if (!ps.is_stable()) throw EngineError("call offered to a busy process");
  const Program& body = prog_of(def, f);
  ProcessState next = ps;
  next.mode = ProcessState::Mode::Processing;
  next.external = f;
  next.frames.push_back(StackFrame{body, std::nullopt, init_sigma_l(def, f, vs), lras});
  return next;
}

Value respond_load(const ProcessState& ps, const VarId& field) {
  if (!ps.is_stable()) throw EngineError("load offered to a busy process");
  return sigma_get(ps.sigma_g, field);
}

ProcessState respond_store(const ProcessState& ps, const VarId& field, const Value& v) {
  if (!ps.is_stable()) throw EngineError("store offered to a busy process");
  ProcessState next = ps;
  sigma_set(next.sigma_g, field, v);
  return next;
}

}  // namespace moolts::sem
