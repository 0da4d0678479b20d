#include "moolts/interp.hpp"

#include <cstdint>
#include <limits>

#include "moolts/stmt.hpp"
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace moolts::interp {
namespace {

using moo::Expr;
using moo::MooError;
using moo::SourceLoc;
using moo::Stmt;
using scpp::ActionLabel;
using scpp::Value;

constexpr int kMaxDepth = 10000;
constexpr long long kMaxSteps = 50'000'000;

struct Closure;

// Runtime value: a plain model value, or a lambda closure.
struct RtValue {
  Value data;
  std::shared_ptr<const Closure> clos;  // set iff the value is a lambda

  RtValue() = default;
  explicit RtValue(Value v) : data(std::move(v)) {}
  explicit RtValue(std::shared_ptr<const Closure> c) : clos(std::move(c)) {}
  bool is_closure() const { return clos != nullptr; }
};

using Cell = std::shared_ptr<RtValue>;

Cell make_cell(RtValue v = RtValue()) { return std::make_shared<RtValue>(std::move(v)); }

// What a reference designates. Cell: a local slot, giving genuine aliasing.
// Field: an (instance, field) pair resolved through the heap on every access,
// so cross-instance reads and writes stay observable. Degenerate: a
// by-reference binding whose argument was not a place — reads pass the value
// through, assigning through it is an error, but forwarding it onward by
// reference exposes the underlying cell.
struct Ref {
  enum class Kind { Cell, Field, Degenerate };
  Kind kind = Kind::Cell;
  Cell cell;
  std::string inst, field;

  static Ref local(Cell c) { return {Kind::Cell, std::move(c), {}, {}}; }
  static Ref on_field(std::string inst, std::string field) {
    return {Kind::Field, nullptr, std::move(inst), std::move(field)};
  }
  static Ref degenerate(RtValue v) { return {Kind::Degenerate, make_cell(std::move(v)), {}, {}}; }
};

struct Entry {
  bool is_ref = false;
  Ref ref;    // is_ref
  Cell cell;  // !is_ref
};

struct Closure {
  std::vector<moo::Param> params;
  std::vector<std::pair<std::string, RtValue>> copies;  // snapshotted at creation
  std::vector<std::string> ref_captures;                // re-resolved by name at call time
  const std::vector<Stmt>* body = nullptr;
  SourceLoc loc;
};

struct Instance {
  std::string id;
  const moo::ClassDecl* cls = nullptr;  // null for the global namespace
  std::map<std::string, Cell> fields;   // total on demand, default void
};

// Control-flow unwinding carriers.
struct MooThrow {};
struct CtlBreak { SourceLoc loc; };
struct CtlContinue { SourceLoc loc; };
struct CtlReturn { RtValue value; };

struct Frame {
  Instance* self = nullptr;
  std::vector<std::map<std::string, Entry>> scopes;
  std::vector<std::pair<std::string, Ref>> lras;  // call-site names, label order
};

struct Binding {
  bool by_ref = false;
  RtValue value;  // !by_ref
  Ref ref;        // by_ref
};

struct BindResult {
  std::vector<Binding> bindings;
  std::vector<Value> label_args;
  std::vector<std::pair<std::string, Ref>> lras;
};

class Machine {
 public:
  Machine(const moo::TranslationUnit& tu, std::string file) : tu_(tu), file_(std::move(file)) {}

  InterpResult run(const Script& script);

 private:
  const moo::TranslationUnit& tu_;
  std::string file_;

  std::map<std::string, const moo::ClassDecl*> classes_;
  std::map<std::string, const moo::MethodDecl*> global_funcs_;
  std::map<std::string, std::string> enum_of_lit_;
  std::set<std::string> global_var_names_;
  std::map<std::string, std::unique_ptr<Instance>> heap_;
  std::vector<std::unique_ptr<Frame>> stack_;
  std::vector<ActionLabel> log_;
  long long steps_ = 0;

  [[noreturn]] void fail(SourceLoc loc, const std::string& msg) const {
    throw MooError(file_, loc, msg);
  }

  Frame& cur() { return *stack_.back(); }
  Instance& global_ns() { return *heap_.at(std::string(scpp::kGlobalNamespace)); }

  void setup(const Script& script);

  // --- name resolution ------------------------------------------------
  Entry* find_local(const std::string& name);
  bool declared_in(const Instance& inst, const std::string& name) const;
  const moo::MethodDecl* find_method(const Instance& inst, const std::string& name) const;
  Cell& field_cell(Instance& inst, const std::string& name);
  Instance& instance_of(const Value& v, SourceLoc loc);

  // --- references -----------------------------------------------------
  static Ref flatten(const Entry& e) {
    if (!e.is_ref) return Ref::local(e.cell);
    if (e.ref.kind == Ref::Kind::Degenerate) return Ref::local(e.ref.cell);
    return e.ref;
  }
  RtValue read_ref(const Ref& r, SourceLoc loc);
  void write_ref(const Ref& r, RtValue v, SourceLoc loc);
  // Reference value as it appears in an LRA payload: field references stay
  // references, everything else is the current referent.
  Value lra_value(const Ref& r) const {
    if (r.kind == Ref::Kind::Field) return Value::field_ref(r.inst, r.field);
    return to_scpp(*r.cell);
  }
  scpp::Lra materialize(const std::vector<std::pair<std::string, Ref>>& lras) const {
    scpp::Lra out;
    out.reserve(lras.size());
    for (const auto& [name, ref] : lras) out.emplace_back(name, lra_value(ref));
    return out;
  }

  // --- values ----------------------------------------------------------
  static Value to_scpp(const RtValue& v) {
    if (v.is_closure()) return Value::lambda({});
    return v.data;
  }
  bool rt_equals(const RtValue& a, const RtValue& b) const {
    if (a.is_closure() || b.is_closure()) return a.clos == b.clos;
    return a.data == b.data;
  }
  std::int64_t as_number(const RtValue& v, SourceLoc loc, const char* what) {
    if (v.is_closure() || !v.data.is(Value::Kind::Number)) fail(loc, std::string(what) + " requires a number");
    return v.data.number_value();
  }
  bool as_bool(const RtValue& v, SourceLoc loc, const char* what) {
    if (v.is_closure() || !v.data.is(Value::Kind::Boolean)) fail(loc, std::string(what) + " requires a Boolean");
    return v.data.boolean_value();
  }

  // --- execution --------------------------------------------------------
  RtValue eval(const Expr& e);
  RtValue eval_ident(const Expr& e);
  RtValue eval_binary(const Expr& e);
  RtValue eval_post_incr(const Expr& e);
  RtValue eval_call(const Expr& e);
  RtValue eval_lambda(const Expr& e);

  void exec(const Stmt& s);
  void exec_block(const std::vector<Stmt>& body);
  void exec_var_decl(const Stmt& s);
  void exec_assign(const Stmt& s);
  void exec_switch(const Stmt& s);

  Ref bind_ref_arg(const Expr& arg);
  Ref bind_ref_init(const Expr& init);
  BindResult make_bindings(const std::vector<moo::Param>& params, const std::vector<const Expr*>& args,
                           SourceLoc loc);

  RtValue invoke_method(Instance& callee, const moo::MethodDecl& m, BindResult bound, bool log,
                        SourceLoc loc);
  RtValue invoke_closure(const Closure& clos, const std::vector<const Expr*>& args, SourceLoc loc);
  RtValue run_body(const std::vector<Stmt>& body);
};

// ---------------------------------------------------------------------------
// setup

void Machine::setup(const Script& script) {
  for (const auto& e : tu_.enums)
    for (const auto& lit : e.literals) enum_of_lit_.emplace(lit, e.name);
  for (const auto& c : tu_.classes) classes_.emplace(c.name, &c);
  for (const auto& f : tu_.global_funcs) global_funcs_.emplace(f.name, &f);
  for (const auto& v : tu_.global_vars) global_var_names_.insert(v.name);

  SourceLoc nowhere{};
  auto gn = std::make_unique<Instance>();
  gn->id = std::string(scpp::kGlobalNamespace);
  heap_.emplace(gn->id, std::move(gn));
  for (const auto& [name, v] : script.globals) {
    if (!global_var_names_.count(name)) fail(nowhere, "no global variable named '" + name + "'");
    global_ns().fields[name] = make_cell(RtValue(v));
  }

  for (const auto& si : script.instances) {
    if (si.id == scpp::kGlobalNamespace) fail(nowhere, "'" + si.id + "' is a reserved instance id");
    auto it = classes_.find(si.cls);
    if (it == classes_.end()) fail(nowhere, "no class named '" + si.cls + "'");
    auto inst = std::make_unique<Instance>();
    inst->id = si.id;
    inst->cls = it->second;
    if (!heap_.emplace(si.id, std::move(inst)).second)
      fail(nowhere, "duplicate instance id '" + si.id + "'");
  }
  // Wire second so members may point forward.
  for (const auto& si : script.instances) {
    Instance& inst = *heap_.at(si.id);
    for (const auto& [name, v] : si.fields) {
      if (!declared_in(inst, name))
        fail(nowhere, "class " + si.cls + " has no field named '" + name + "'");
      inst.fields[name] = make_cell(RtValue(v));
    }
    for (const auto& [name, target] : si.members) {
      if (!declared_in(inst, name))
        fail(nowhere, "class " + si.cls + " has no member named '" + name + "'");
      if (!heap_.count(target)) fail(nowhere, "member '" + name + "' wired to unknown instance '" + target + "'");
      inst.fields[name] = make_cell(RtValue(Value::ptype(target)));
    }
  }
}

// ---------------------------------------------------------------------------
// resolution

Entry* Machine::find_local(const std::string& name) {
  auto& scopes = cur().scopes;
  for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
    auto f = it->find(name);
    if (f != it->end()) return &f->second;
  }
  return nullptr;
}

bool Machine::declared_in(const Instance& inst, const std::string& name) const {
  if (!inst.cls) return global_var_names_.count(name) > 0;
  for (const auto& f : inst.cls->fields)
    if (f.name == name) return true;
  for (const auto& m : inst.cls->members)
    if (m.name == name) return true;
  return false;
}

const moo::MethodDecl* Machine::find_method(const Instance& inst, const std::string& name) const {
  if (!inst.cls) {
    auto it = global_funcs_.find(name);
    return it == global_funcs_.end() ? nullptr : it->second;
  }
  for (const auto& m : inst.cls->methods)
    if (m.name == name) return &m;
  return nullptr;
}

Cell& Machine::field_cell(Instance& inst, const std::string& name) {
  auto it = inst.fields.find(name);
  if (it == inst.fields.end()) it = inst.fields.emplace(name, make_cell()).first;  // default void
  return it->second;
}

Instance& Machine::instance_of(const Value& v, SourceLoc loc) {
  if (!v.is(Value::Kind::PType)) fail(loc, "expected a process value, got " + scpp::render_value(v));
  auto it = heap_.find(v.proc());
  if (it == heap_.end()) fail(loc, "unknown process identity '" + v.proc() + "'");
  return *it->second;
}

// ---------------------------------------------------------------------------
// references

RtValue Machine::read_ref(const Ref& r, SourceLoc) {
  if (r.kind != Ref::Kind::Field) return *r.cell;
  Instance& owner = *heap_.at(r.inst);
  RtValue v = *field_cell(owner, r.field);
  if (&owner != cur().self)
    log_.push_back(ActionLabel::load(ActionLabel::Polarity::Comm, r.inst, r.field, to_scpp(v)));
  return v;
}

void Machine::write_ref(const Ref& r, RtValue v, SourceLoc loc) {
  switch (r.kind) {
    case Ref::Kind::Cell:
      *r.cell = std::move(v);
      return;
    case Ref::Kind::Degenerate:
      fail(loc, "assignment through a non-reference value");
    case Ref::Kind::Field: {
      Instance& owner = *heap_.at(r.inst);
      if (&owner != cur().self)
        log_.push_back(ActionLabel::store(ActionLabel::Polarity::Comm, r.inst, r.field, to_scpp(v)));
      *field_cell(owner, r.field) = std::move(v);
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// expression evaluation

RtValue Machine::eval(const Expr& e) {
  if (++steps_ > kMaxSteps) fail(e.loc, "step limit exceeded");
  switch (e.kind) {
    case Expr::Kind::IntLit:
      return RtValue(Value::number(e.num));
    case Expr::Kind::BoolLit:
      return RtValue(Value::boolean(e.truth));
    case Expr::Kind::StringLit:
      return RtValue(Value::string(e.text));
    case Expr::Kind::Ident:
      return eval_ident(e);
    case Expr::Kind::This:
      return RtValue(Value::ptype(cur().self->id));
    case Expr::Kind::Not:
      return RtValue(Value::boolean(!as_bool(eval(e.kids[0]), e.loc, "'!'")));
    case Expr::Kind::Binary:
      return eval_binary(e);
    case Expr::Kind::Ternary:
      return as_bool(eval(e.kids[0]), e.loc, "'?:'") ? eval(e.kids[1]) : eval(e.kids[2]);
    case Expr::Kind::PostIncr:
      return eval_post_incr(e);
    case Expr::Kind::Member: {
      RtValue owner = eval(e.kids[0]);
      if (owner.is_closure()) fail(e.loc, "member access on a lambda value");
      Instance& inst = instance_of(owner.data, e.loc);
      return read_ref(Ref::on_field(inst.id, e.text), e.loc);
    }
    case Expr::Kind::Call:
      return eval_call(e);
    case Expr::Kind::MethodCall: {
      RtValue owner = eval(e.kids[0]);
      if (owner.is_closure()) fail(e.loc, "method call on a lambda value");
      Instance& inst = instance_of(owner.data, e.loc);
      const moo::MethodDecl* m = find_method(inst, e.text);
      if (!m) fail(e.loc, "no function named '" + e.text + "' on '" + inst.id + "'");
      if (!m->has_body) fail(e.loc, "function '" + e.text + "' has no body");
      std::vector<const Expr*> args;
      for (std::size_t i = 1; i < e.kids.size(); ++i) args.push_back(&e.kids[i]);
      bool foreign = &inst != cur().self;
      return invoke_method(inst, *m, make_bindings(m->params, args, e.loc), foreign, e.loc);
    }
    case Expr::Kind::Index: {
      RtValue base = eval(e.kids[0]);
      RtValue idx = eval(e.kids[1]);
      if (base.is_closure() || !base.data.is(Value::Kind::OrderedSet))
        fail(e.loc, "subscript requires a list");
      std::int64_t i = as_number(idx, e.loc, "subscript");
      const auto& elems = base.data.elements();
      if (i < 0 || static_cast<std::size_t>(i) >= elems.size()) fail(e.loc, "list index out of range");
      return RtValue(elems[static_cast<std::size_t>(i)]);
    }
    case Expr::Kind::Lambda:
      return eval_lambda(e);
    case Expr::Kind::InitList: {
      std::vector<Value> elems;
      elems.reserve(e.kids.size());
      for (const auto& k : e.kids) {
        RtValue v = eval(k);
        if (v.is_closure()) fail(k.loc, "a lambda value cannot be stored in a list");
        elems.push_back(v.data);
      }
      return RtValue(Value::ordered_set(std::move(elems)));
    }
  }
  fail(e.loc, "unreachable expression kind");
}

RtValue Machine::eval_ident(const Expr& e) {
  const std::string& name = e.text;
  if (Entry* entry = find_local(name)) {
    if (!entry->is_ref) return *entry->cell;
    return read_ref(entry->ref, e.loc);
  }
  if (declared_in(*cur().self, name)) return read_ref(Ref::on_field(cur().self->id, name), e.loc);
  if (enum_of_lit_.count(name)) return RtValue(Value::enum_lit(name));
  if (global_var_names_.count(name))
    return read_ref(Ref::on_field(std::string(scpp::kGlobalNamespace), name), e.loc);
  fail(e.loc, "use of undeclared identifier '" + name + "'");
}

RtValue Machine::eval_binary(const Expr& e) {
  const std::string& op = e.text;
  if (op == "&&") {
    if (!as_bool(eval(e.kids[0]), e.loc, "'&&'")) return RtValue(Value::boolean(false));
    return RtValue(Value::boolean(as_bool(eval(e.kids[1]), e.loc, "'&&'")));
  }
  if (op == "||") {
    // Strict: both operands always evaluate, side effects included.
    bool a = as_bool(eval(e.kids[0]), e.loc, "'||'");
    bool b = as_bool(eval(e.kids[1]), e.loc, "'||'");
    return RtValue(Value::boolean(a || b));
  }
  RtValue lhs = eval(e.kids[0]);
  RtValue rhs = eval(e.kids[1]);
  if (op == "==") return RtValue(Value::boolean(rt_equals(lhs, rhs)));
  if (op == "!=") return RtValue(Value::boolean(!rt_equals(lhs, rhs)));

  std::int64_t a = as_number(lhs, e.loc, ("'" + op + "'").c_str());
  std::int64_t b = as_number(rhs, e.loc, ("'" + op + "'").c_str());
  if (op == "<") return RtValue(Value::boolean(a < b));
  if (op == "<=") return RtValue(Value::boolean(a <= b));
  if (op == ">") return RtValue(Value::boolean(a > b));
  if (op == ">=") return RtValue(Value::boolean(a >= b));

  std::int64_t r = 0;
  if (op == "+") {
    if (__builtin_add_overflow(a, b, &r)) fail(e.loc, "integer overflow in '+'");
  } else if (op == "-") {
    if (__builtin_sub_overflow(a, b, &r)) fail(e.loc, "integer overflow in '-'");
  } else if (op == "*") {
    if (__builtin_mul_overflow(a, b, &r)) fail(e.loc, "integer overflow in '*'");
  } else if (op == "/") {
    if (b == 0) fail(e.loc, "division by zero");
    if (a == std::numeric_limits<std::int64_t>::min() && b == -1) fail(e.loc, "integer overflow in '/'");
    r = a / b;
  } else {
    fail(e.loc, "unknown operator '" + op + "'");
  }
  return RtValue(Value::number(r));
}

RtValue Machine::eval_post_incr(const Expr& e) {
  const Expr& tgt = e.kids[0];
  Ref place;
  if (tgt.kind == Expr::Kind::Ident) {
    const std::string& name = tgt.text;
    if (Entry* entry = find_local(name)) {
      place = entry->is_ref ? entry->ref : Ref::local(entry->cell);
    } else if (declared_in(*cur().self, name)) {
      place = Ref::on_field(cur().self->id, name);
    } else if (global_var_names_.count(name)) {
      place = Ref::on_field(std::string(scpp::kGlobalNamespace), name);
    } else {
      fail(tgt.loc, "use of undeclared identifier '" + name + "'");
    }
  } else if (tgt.kind == Expr::Kind::Member) {
    RtValue owner = eval(tgt.kids[0]);  // owner evaluated once
    if (owner.is_closure()) fail(tgt.loc, "member access on a lambda value");
    place = Ref::on_field(instance_of(owner.data, tgt.loc).id, tgt.text);
  } else {
    fail(e.loc, "'++' requires a variable or field");
  }
  RtValue old = read_ref(place, e.loc);
  std::int64_t n = as_number(old, e.loc, "'++'");
  std::int64_t next = 0;
  if (__builtin_add_overflow(n, std::int64_t{1}, &next)) fail(e.loc, "integer overflow in '++'");
  write_ref(place, RtValue(Value::number(next)), e.loc);
  return old;
}

RtValue Machine::eval_call(const Expr& e) {
  std::vector<const Expr*> args;
  for (const auto& k : e.kids) args.push_back(&k);

  // Dispatch order: own-class function, then namespace-scope function, then a
  // local lambda value.
  if (const moo::MethodDecl* m = find_method(*cur().self, e.text)) {
    if (!m->has_body) fail(e.loc, "function '" + e.text + "' has no body");
    return invoke_method(*cur().self, *m, make_bindings(m->params, args, e.loc), false, e.loc);
  }
  auto gf = global_funcs_.find(e.text);
  if (gf != global_funcs_.end()) {
    const moo::MethodDecl* m = gf->second;
    if (!m->has_body) fail(e.loc, "function '" + e.text + "' has no body");
    Instance& gn = global_ns();
    bool foreign = &gn != cur().self;
    return invoke_method(gn, *m, make_bindings(m->params, args, e.loc), foreign, e.loc);
  }
  if (Entry* entry = find_local(e.text)) {
    if (entry->is_ref || !entry->cell->is_closure())
      fail(e.loc, "called value '" + e.text + "' is not a lambda");
    // Keep the closure alive across the call even if the variable is reassigned.
    std::shared_ptr<const Closure> clos = entry->cell->clos;
    return invoke_closure(*clos, args, e.loc);
  }
  fail(e.loc, "call of undeclared function '" + e.text + "'");
}

RtValue Machine::eval_lambda(const Expr& e) {
  auto clos = std::make_shared<Closure>();
  clos->params = e.params;
  clos->body = &e.body;
  clos->loc = e.loc;
  std::set<std::string> seen;
  for (const auto& cap : e.captures) {
    if (!seen.insert(cap.name).second) fail(cap.loc, "duplicate capture '" + cap.name + "'");
    for (const auto& p : e.params)
      if (p.name == cap.name) fail(cap.loc, "lambda parameter shadows capture '" + cap.name + "'");
    Entry* entry = find_local(cap.name);
    if (!entry) fail(cap.loc, "capture '" + cap.name + "' must name a local variable");
    if (cap.by_ref) {
      clos->ref_captures.push_back(cap.name);
    } else {
      if (entry->is_ref)
        fail(cap.loc, "cannot copy-capture the reference variable '" + cap.name + "'");
      clos->copies.emplace_back(cap.name, *entry->cell);
    }
  }
  return RtValue(std::shared_ptr<const Closure>(std::move(clos)));
}

// ---------------------------------------------------------------------------
// argument binding

// By-reference argument positions accept places only: a bare identifier, a
// member access, or (degenerately) any non-literal expression whose value is
// then read-only for the callee.
Ref Machine::bind_ref_arg(const Expr& arg) {
  switch (arg.kind) {
    case Expr::Kind::Ident: {
      const std::string& name = arg.text;
      if (Entry* entry = find_local(name)) return flatten(*entry);
      if (declared_in(*cur().self, name)) return Ref::on_field(cur().self->id, name);
      if (enum_of_lit_.count(name)) return Ref::degenerate(RtValue(Value::enum_lit(name)));
      if (global_var_names_.count(name))
        return Ref::on_field(std::string(scpp::kGlobalNamespace), name);
      fail(arg.loc, "use of undeclared identifier '" + name + "'");
    }
    case Expr::Kind::Member: {
      RtValue owner = eval(arg.kids[0]);
      if (owner.is_closure()) fail(arg.loc, "member access on a lambda value");
      return Ref::on_field(instance_of(owner.data, arg.loc).id, arg.text);
    }
    case Expr::Kind::IntLit:
    case Expr::Kind::BoolLit:
    case Expr::Kind::StringLit:
    case Expr::Kind::InitList:
    case Expr::Kind::Lambda:
      fail(arg.loc, "cannot pass a literal by reference");
    default:
      return Ref::degenerate(eval(arg));
  }
}

// Reference-variable initializers are stricter: aliasing a plain local of the
// same frame is rejected (the callee-side reference machinery has nothing to
// write back through), while references, fields and globals work.
Ref Machine::bind_ref_init(const Expr& init) {
  if (init.kind == Expr::Kind::Ident) {
    const std::string& name = init.text;
    if (Entry* entry = find_local(name)) {
      if (!entry->is_ref)
        fail(init.loc, "a reference cannot alias a plain local variable of the same frame");
      if (entry->ref.kind == Ref::Kind::Degenerate)
        return Ref::degenerate(*entry->ref.cell);  // snapshot, not live
      return entry->ref;
    }
  }
  return bind_ref_arg(init);
}

BindResult Machine::make_bindings(const std::vector<moo::Param>& params,
                                  const std::vector<const Expr*>& args, SourceLoc loc) {
  if (params.size() != args.size())
    fail(loc, "expected " + std::to_string(params.size()) + " arguments, got " +
                  std::to_string(args.size()));
  BindResult out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Expr& arg = *args[i];
    Binding b;
    b.by_ref = params[i].by_ref;
    if (!b.by_ref) {
      b.value = eval(arg);
      out.label_args.push_back(to_scpp(b.value));
    } else {
      b.ref = bind_ref_arg(arg);
      if (arg.kind == Expr::Kind::Ident && find_local(arg.text)) {
        // Call-site variable name, whatever the reference resolves to.
        out.label_args.push_back(Value::local_ref(arg.text));
        out.lras.emplace_back(arg.text, b.ref);
      } else if (b.ref.kind == Ref::Kind::Field) {
        out.label_args.push_back(Value::field_ref(b.ref.inst, b.ref.field));
      } else {
        out.label_args.push_back(to_scpp(*b.ref.cell));
      }
    }
    out.bindings.push_back(std::move(b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// invocation

RtValue Machine::run_body(const std::vector<Stmt>& body) {
  try {
    for (const auto& s : body) exec(s);
  } catch (CtlReturn& r) {
    return std::move(r.value);
  } catch (CtlBreak& b) {
    fail(b.loc, "'break' used outside of a loop or switch");
  } catch (CtlContinue& c) {
    fail(c.loc, "'continue' used outside of a loop");
  }
  return RtValue();  // fell off the end: void
}

RtValue Machine::invoke_method(Instance& callee, const moo::MethodDecl& m, BindResult bound,
                               bool log, SourceLoc loc) {
  if (static_cast<int>(stack_.size()) >= kMaxDepth) fail(loc, "call depth limit exceeded");

  auto frame = std::make_unique<Frame>();
  frame->self = &callee;
  frame->scopes.emplace_back();
  for (std::size_t i = 0; i < m.params.size(); ++i) {
    Entry entry;
    Binding& b = bound.bindings[i];
    if (b.by_ref) {
      entry.is_ref = true;
      entry.ref = std::move(b.ref);
    } else {
      entry.cell = make_cell(std::move(b.value));
    }
    frame->scopes.back()[m.params[i].name] = std::move(entry);
  }
  frame->lras = std::move(bound.lras);

  if (log)
    log_.push_back(ActionLabel::call_func(ActionLabel::Polarity::Comm, callee.id, m.name,
                                          std::move(bound.label_args), materialize(frame->lras)));
  stack_.push_back(std::move(frame));
  try {
    RtValue result = run_body(m.body);
    if (log)
      log_.push_back(ActionLabel::return_func(ActionLabel::Polarity::Comm, callee.id, m.name,
                                              to_scpp(result), materialize(cur().lras)));
    stack_.pop_back();
    return result;
  } catch (MooThrow&) {
    if (log)
      log_.push_back(ActionLabel::throw_func(ActionLabel::Polarity::Comm, callee.id, m.name,
                                             materialize(cur().lras)));
    stack_.pop_back();
    throw;
  } catch (...) {
    stack_.pop_back();
    throw;
  }
}

RtValue Machine::invoke_closure(const Closure& clos, const std::vector<const Expr*>& args,
                                SourceLoc loc) {
  if (static_cast<int>(stack_.size()) >= kMaxDepth) fail(loc, "call depth limit exceeded");
  BindResult bound = make_bindings(clos.params, args, loc);

  auto frame = std::make_unique<Frame>();
  frame->self = cur().self;  // a lambda runs inside the calling process
  frame->scopes.emplace_back();
  auto& scope = frame->scopes.back();
  for (std::size_t i = 0; i < clos.params.size(); ++i) {
    Entry entry;
    Binding& b = bound.bindings[i];
    if (b.by_ref) {
      entry.is_ref = true;
      entry.ref = std::move(b.ref);
    } else {
      entry.cell = make_cell(std::move(b.value));
    }
    scope[clos.params[i].name] = std::move(entry);
  }
  for (const auto& [name, v] : clos.copies) {
    if (scope.count(name)) continue;  // parameters win on collision
    Entry entry;
    entry.cell = make_cell(v);  // fresh copy per call
    scope[name] = std::move(entry);
  }
  for (const auto& name : clos.ref_captures) {
    // Re-resolved by name in the calling frame, mirroring how the captured
    // reference list is rebound at call time.
    Entry* outer = find_local(name);
    if (!outer) fail(loc, "dangling lambda capture '" + name + "'");
    if (scope.count(name)) continue;
    Entry entry;
    entry.is_ref = true;
    entry.ref = flatten(*outer);
    scope[name] = std::move(entry);
  }

  stack_.push_back(std::move(frame));
  try {
    RtValue result = run_body(*clos.body);
    stack_.pop_back();
    return result;
  } catch (...) {
    stack_.pop_back();
    throw;
  }
}

// ---------------------------------------------------------------------------
// statements

void Machine::exec(const Stmt& s) {
  if (++steps_ > kMaxSteps) fail(s.loc, "step limit exceeded");
  switch (s.kind) {
    case Stmt::Kind::Block:
      exec_block(s.body1);
      return;
    case Stmt::Kind::VarDecl:
      exec_var_decl(s);
      return;
    case Stmt::Kind::ExprStmt:
      eval(s.exprs[0]);
      return;
    case Stmt::Kind::Assign:
      exec_assign(s);
      return;
    case Stmt::Kind::If:
      if (as_bool(eval(s.exprs[0]), s.loc, "'if'"))
        exec_block(s.body1);
      else
        exec_block(s.body2);
      return;
    case Stmt::Kind::While:
      while (as_bool(eval(s.exprs[0]), s.loc, "'while'")) {
        try {
          exec_block(s.body1);
        } catch (CtlBreak&) {
          break;
        } catch (CtlContinue&) {
        }
      }
      return;
    case Stmt::Kind::For: {
      cur().scopes.emplace_back();  // init clause scope
      try {
        for (const auto& p : s.pre) exec(p);
        while (!s.has_cond || as_bool(eval(s.exprs[0]), s.loc, "'for'")) {
          bool broke = false;
          try {
            exec_block(s.body1);
          } catch (CtlBreak&) {
            broke = true;
          } catch (CtlContinue&) {
            // the increment clause still runs
          }
          if (broke) break;
          for (const auto& p : s.post) exec(p);
        }
      } catch (...) {
        cur().scopes.pop_back();
        throw;
      }
      cur().scopes.pop_back();
      return;
    }
    case Stmt::Kind::Switch:
      exec_switch(s);
      return;
    case Stmt::Kind::Continue:
      throw CtlContinue{s.loc};
    case Stmt::Kind::Break:
      throw CtlBreak{s.loc};
    case Stmt::Kind::Return: {
      RtValue v = s.exprs.empty() ? RtValue() : eval(s.exprs[0]);
      throw CtlReturn{std::move(v)};
    }
    case Stmt::Kind::Try:
      try {
        exec_block(s.body1);
      } catch (MooThrow&) {
        exec_block(s.body2);
      }
      return;
    case Stmt::Kind::Throw:
      if (!s.exprs.empty()) eval(s.exprs[0]);  // payload evaluates, then is discarded
      throw MooThrow{};
  }
}

void Machine::exec_block(const std::vector<Stmt>& body) {
  cur().scopes.emplace_back();
  try {
    for (const auto& s : body) exec(s);
  } catch (...) {
    cur().scopes.pop_back();
    throw;
  }
  cur().scopes.pop_back();
}

void Machine::exec_var_decl(const Stmt& s) {
  for (const auto& scope : cur().scopes)
    if (scope.count(s.name)) fail(s.loc, "redeclaration of '" + s.name + "'");
  if (enum_of_lit_.count(s.name))
    fail(s.loc, "'" + s.name + "' is ambiguous with an enumerator");
  Entry entry;
  if (s.by_ref) {
    entry.is_ref = true;
    entry.ref = bind_ref_init(s.exprs[0]);
  } else {
    entry.cell = make_cell(s.has_init ? eval(s.exprs[0]) : RtValue());
  }
  cur().scopes.back()[s.name] = std::move(entry);
}

void Machine::exec_assign(const Stmt& s) {
  const Expr& target = s.exprs[0];
  if (target.kind == Expr::Kind::Ident) {
    const std::string& name = target.text;
    if (Entry* entry = find_local(name)) {
      RtValue v = eval(s.exprs[1]);
      if (entry->is_ref)
        write_ref(entry->ref, std::move(v), s.loc);
      else
        *entry->cell = std::move(v);
      return;
    }
    if (declared_in(*cur().self, name)) {
      write_ref(Ref::on_field(cur().self->id, name), eval(s.exprs[1]), s.loc);
      return;
    }
    if (enum_of_lit_.count(name)) fail(s.loc, "cannot assign to enumerator '" + name + "'");
    if (global_var_names_.count(name)) {
      write_ref(Ref::on_field(std::string(scpp::kGlobalNamespace), name), eval(s.exprs[1]), s.loc);
      return;
    }
    fail(s.loc, "use of undeclared identifier '" + name + "'");
  }
  // Member target: owner evaluates before the assigned value.
  RtValue owner = eval(target.kids[0]);
  if (owner.is_closure()) fail(target.loc, "member access on a lambda value");
  Instance& inst = instance_of(owner.data, target.loc);
  write_ref(Ref::on_field(inst.id, target.text), eval(s.exprs[1]), s.loc);
}

void Machine::exec_switch(const Stmt& s) {
  RtValue scrutinee = eval(s.exprs[0]);
  int match = -1, fallback = -1;
  for (std::size_t i = 0; i < s.cases.size(); ++i) {
    const moo::Case& c = s.cases[i];
    for (const auto& st : c.body)
      if (st.kind == Stmt::Kind::VarDecl)
        fail(st.loc, "declarations in a case body must be wrapped in a block");
    if (c.is_default) {
      fallback = static_cast<int>(i);
      continue;
    }
    RtValue label;
    const Expr& le = c.label;
    switch (le.kind) {
      case Expr::Kind::IntLit:
        label = RtValue(Value::number(le.num));
        break;
      case Expr::Kind::BoolLit:
        label = RtValue(Value::boolean(le.truth));
        break;
      case Expr::Kind::StringLit:
        label = RtValue(Value::string(le.text));
        break;
      case Expr::Kind::Ident:
        if (!enum_of_lit_.count(le.text)) fail(le.loc, "case label must be a constant");
        label = RtValue(Value::enum_lit(le.text));
        break;
      default:
        fail(le.loc, "case label must be a constant");
    }
    if (match < 0 && rt_equals(scrutinee, label)) match = static_cast<int>(i);
  }
  int start = match >= 0 ? match : fallback;
  if (start < 0) return;

  cur().scopes.emplace_back();  // one scope across the fallthrough chain
  try {
    for (std::size_t i = static_cast<std::size_t>(start); i < s.cases.size(); ++i)
      for (const auto& st : s.cases[i].body) exec(st);
  } catch (CtlBreak&) {
  } catch (...) {
    cur().scopes.pop_back();
    throw;
  }
  cur().scopes.pop_back();
}

// ---------------------------------------------------------------------------
// entry point

InterpResult Machine::run(const Script& script) {
  setup(script);

  Instance* target = nullptr;
  if (auto it = heap_.find(script.target); it != heap_.end()) target = it->second.get();
  if (!target || !target->cls) fail({}, "script target '" + script.target + "' is not an instance");

  for (const auto& call : script.calls) {
    const moo::MethodDecl* m = find_method(*target, call.func);
    if (!m) fail({}, "no function named '" + call.func + "' on '" + target->id + "'");
    if (!m->has_body) fail({}, "function '" + call.func + "' has no body");
    if (m->params.size() != call.args.size())
      fail({}, "'" + call.func + "' expects " + std::to_string(m->params.size()) +
                   " arguments, got " + std::to_string(call.args.size()));

    BindResult bound;
    for (std::size_t i = 0; i < m->params.size(); ++i) {
      Binding b;
      b.by_ref = m->params[i].by_ref;
      if (!b.by_ref) {
        b.value = RtValue(call.args[i]);
        bound.label_args.push_back(call.args[i]);
      } else {
        // Top-level by-ref arguments live in synthetic slots named by position.
        std::string slot = "__top" + std::to_string(i);
        b.ref = Ref::local(make_cell(RtValue(call.args[i])));
        bound.label_args.push_back(Value::local_ref(slot));
        bound.lras.emplace_back(slot, b.ref);
      }
      bound.bindings.push_back(std::move(b));
    }
    try {
      invoke_method(*target, *m, std::move(bound), true, {});
    } catch (MooThrow&) {
      // Logged at the boundary; the next scripted call still runs.
    }
  }

  InterpResult result;
  result.log = std::move(log_);
  for (const auto& [id, inst] : heap_) {
    if (!inst->cls) {
      if (tu_.global_vars.empty()) continue;
      auto& out = result.final_fields[id];
      for (const auto& v : tu_.global_vars) out.emplace(v.name, to_scpp(*field_cell(*inst, v.name)));
      continue;
    }
    auto& out = result.final_fields[id];
    for (const auto& f : inst->cls->fields) out.emplace(f.name, to_scpp(*field_cell(*inst, f.name)));
    for (const auto& m : inst->cls->members) out.emplace(m.name, to_scpp(*field_cell(*inst, m.name)));
  }
  return result;
}

}  // namespace

InterpResult run_program(const moo::TranslationUnit& tu, const Script& script,
                         const std::string& filename) {
  Machine machine(tu, filename);
  return machine.run(script);
}

}  // namespace moolts::interp
