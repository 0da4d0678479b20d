#include "moolts/action.hpp"

namespace moolts::scpp {

ActionLabel ActionLabel::call_func(Polarity pol, ProcId proc, FuncId func, std::vector<Value> args, Lra lras) {
  ActionLabel a;
  a.kind = Kind::CallFunc;
  a.polarity = pol;
  a.proc = std::move(proc);
  a.func = std::move(func);
  a.args = std::move(args);
  a.lras = std::move(lras);
  return a;
}

ActionLabel ActionLabel::return_func(Polarity pol, ProcId proc, FuncId func, Value v, Lra lras) {
  ActionLabel a;
  a.kind = Kind::ReturnFunc;
  a.polarity = pol;
  a.proc = std::move(proc);
  a.func = std::move(func);
  a.value = std::move(v);
  a.lras = std::move(lras);
  return a;
}

ActionLabel ActionLabel::throw_func(Polarity pol, ProcId proc, FuncId func, Lra lras) {
  ActionLabel a;
  a.kind = Kind::ThrowFunc;
  a.polarity = pol;
  a.proc = std::move(proc);
  a.func = std::move(func);
  a.lras = std::move(lras);
  return a;
}

ActionLabel ActionLabel::load(Polarity pol, ProcId proc, VarId field, Value v) {
  ActionLabel a;
  a.kind = Kind::Load;
  a.polarity = pol;
  a.proc = std::move(proc);
  a.field = std::move(field);
  a.value = std::move(v);
  return a;
}

ActionLabel ActionLabel::store(Polarity pol, ProcId proc, VarId field, Value v) {
  ActionLabel a;
  a.kind = Kind::Store;
  a.polarity = pol;
  a.proc = std::move(proc);
  a.field = std::move(field);
  a.value = std::move(v);
  return a;
}

bool operator==(const ActionLabel& a, const ActionLabel& b) {
  return a.kind == b.kind && a.polarity == b.polarity && a.proc == b.proc && a.func == b.func &&
         a.field == b.field && a.args == b.args && a.value == b.value && a.lras == b.lras;
}

std::string render_lras(const Lra& lras) {
  std::string out = "{";
  bool first = true;
  for (const auto& [id, v] : lras) {
    if (!first) out += ",";
    first = false;
    out += id;
    out += "=";
    out += render_value(v);
  }
  out += "}";
  return out;
}

std::string render_action(const ActionLabel& a) {
  if (a.kind == ActionLabel::Kind::Tau) return "tau";
  std::string out;
  switch (a.kind) {
    case ActionLabel::Kind::CallFunc: out = "call_func"; break;
    case ActionLabel::Kind::ReturnFunc: out = "return_func"; break;
    case ActionLabel::Kind::ThrowFunc: out = "throw_func"; break;
    case ActionLabel::Kind::Load: out = "load"; break;
    case ActionLabel::Kind::Store: out = "store"; break;
    case ActionLabel::Kind::Tau: return "tau";
  }
  switch (a.polarity) {
    case ActionLabel::Polarity::Top: out += "_t"; break;
    case ActionLabel::Polarity::Bottom: out += "_b"; break;
    case ActionLabel::Polarity::Comm: break;
  }
  out += "(";
  out += a.proc;
  switch (a.kind) {
    case ActionLabel::Kind::CallFunc: {
      out += "," + a.func + ",[";
      bool first = true;
      for (const Value& v : a.args) {
        if (!first) out += ",";
        first = false;
        out += render_value(v);
      }
      out += "]," + render_lras(a.lras);
      break;
    }
    case ActionLabel::Kind::ReturnFunc:
      out += "," + a.func + "," + render_value(a.value) + "," + render_lras(a.lras);
      break;
    case ActionLabel::Kind::ThrowFunc:
      out += "," + a.func + "," + render_lras(a.lras);
      break;
    case ActionLabel::Kind::Load:
    case ActionLabel::Kind::Store:
      out += "," + a.field + "," + render_value(a.value);
      break;
    case ActionLabel::Kind::Tau:
      break;
  }
  out += ")";
  return out;
}

}  // namespace moolts::scpp
