#pragma once

#include "moolts/expr.hpp"
#include "moolts/sem_state.hpp"
#include "moolts/value.hpp"

namespace moolts::sem {

struct EvalCtx {
  const scpp::ProcId& self;
  const Sigma& sigma_l;
  const Sigma& sigma_g;
};

// EE: pure evaluation over the local and global stores. Arithmetic and
// comparisons want Numbers; equality is structural over any values; and/or
// are strict binary Boolean operators (short-circuiting was compiled away).
// Throws EngineError on type mismatch, division by zero, overflow, or an
// out-of-range subscript.
scpp::Value eval_expr(const scpp::Expr& e, const EvalCtx& ctx);

}  // namespace moolts::sem
