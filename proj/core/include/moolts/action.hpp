#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moolts/ids.hpp"
#include "moolts/value.hpp"

namespace moolts::scpp {

// Observable action of a process or of a composed system. Top/Bottom mark
// which side of an interaction a label belongs to; Comm is the synchronized
// label that only appears in composed transition systems.
struct ActionLabel {
  enum class Kind : std::uint8_t { CallFunc, ReturnFunc, ThrowFunc, Load, Store, Tau };
  enum class Polarity : std::uint8_t { Top, Bottom, Comm };

  Kind kind = Kind::Tau;
  Polarity polarity = Polarity::Comm;
  ProcId proc;               // callee / owner process
  FuncId func;               // call/return/throw
  VarId field;               // load/store
  std::vector<Value> args;   // call
  Value value;               // return / load / store
  Lra lras;                  // call/return/throw

  static ActionLabel tau() { return {}; }
  static ActionLabel call_func(Polarity pol, ProcId proc, FuncId func, std::vector<Value> args, Lra lras);
  static ActionLabel return_func(Polarity pol, ProcId proc, FuncId func, Value v, Lra lras);
  static ActionLabel throw_func(Polarity pol, ProcId proc, FuncId func, Lra lras);
  static ActionLabel load(Polarity pol, ProcId proc, VarId field, Value v);
  static ActionLabel store(Polarity pol, ProcId proc, VarId field, Value v);

  bool is_tau() const { return kind == Kind::Tau; }

  friend bool operator==(const ActionLabel& a, const ActionLabel& b);
  friend bool operator!=(const ActionLabel& a, const ActionLabel& b) { return !(a == b); }
};

// Canonical rendering, e.g. "tau", "call_func_b(P,f,[1,true],{x=2})",
// "load_t(p,x,2)", "return_func(P,f,void,{})" (bare suffix = Comm).
std::string render_action(const ActionLabel& a);
std::string render_lras(const Lra& lras);

}  // namespace moolts::scpp
