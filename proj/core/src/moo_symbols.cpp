#include "moolts/moo_symbols.hpp"

#include <set>

namespace moolts::moo {
namespace {

bool same_shape(const MethodSig& a, const MethodSig& b) {
  return a.by_ref == b.by_ref;  // arity and per-position flags
}

MethodSig sig_of(const std::string& owner, const MethodDecl& m) {
  MethodSig s;
  s.owner = owner;
  s.return_type = m.return_type;
  for (const Param& p : m.params) {
    s.param_names.push_back(p.name);
    s.by_ref.push_back(p.by_ref);
  }
  s.has_body = m.has_body;
  s.loc = m.loc;
  return s;
}

}  // namespace

SymbolTable SymbolTable::build(const TranslationUnit& tu, const std::string& target,
                               const std::string& filename) {
  SymbolTable st;
  st.target_ = target;
  st.filename_ = filename;

  auto fail = [&](SourceLoc loc, const std::string& msg) -> void {
    throw MooError(filename, loc, msg);
  };

  for (const ClassDecl& cd : tu.classes) {
    if (!st.class_names_.emplace(cd.name, 0).second)
      fail(cd.loc, "duplicate class '" + cd.name + "'");
  }
  for (const EnumDecl& e : tu.enums) {
    if (st.class_names_.count(e.name) || st.enums_.count(e.name))
      fail(e.loc, "duplicate type name '" + e.name + "'");
    st.enums_[e.name] = e.literals;
    std::set<std::string> seen;
    for (const std::string& lit : e.literals) {
      if (!seen.insert(lit).second) fail(e.loc, "duplicate enumerator '" + lit + "'");
      if (!st.lit_owner_.emplace(lit, e.name).second)
        fail(e.loc, "enumerator '" + lit + "' is declared in more than one enum");
      if (st.class_names_.count(lit))
        fail(e.loc, "enumerator '" + lit + "' collides with a class name");
    }
  }

  auto check_type = [&](const Type& t, SourceLoc loc) {
    const Type* cur = &t;
    while (cur->kind == Type::Kind::List) cur = cur->elem.get();
    if (cur->kind != Type::Kind::Named) return;
    if (cur->pointer) {
      if (!st.class_names_.count(cur->name)) fail(loc, "unknown class '" + cur->name + "'");
    } else {
      if (!st.enums_.count(cur->name)) fail(loc, "unknown enum '" + cur->name + "'");
    }
  };

  const ClassDecl* tc = nullptr;
  for (const ClassDecl& cd : tu.classes)
    if (cd.name == target) tc = &cd;
  if (!tc) throw MooError(filename, SourceLoc{1, 1}, "target class '" + target + "' not found");

  for (const FieldDecl& g : tu.global_vars) {
    check_type(g.type, g.loc);
    if (!st.global_vars_.emplace(g.name, g.type).second)
      fail(g.loc, "duplicate global variable '" + g.name + "'");
    if (st.lit_owner_.count(g.name))
      fail(g.loc, "ambiguous identifier '" + g.name + "': both global variable and enumerator");
  }

  auto add_sig = [&](const std::string& owner, const MethodDecl& m) {
    MethodSig s = sig_of(owner, m);
    check_type(m.return_type, m.loc);
    std::set<std::string> seen;
    for (const Param& p : m.params) {
      check_type(p.type, p.loc);
      if (!seen.insert(p.name).second) fail(p.loc, "duplicate parameter '" + p.name + "'");
      if (st.lit_owner_.count(p.name))
        fail(p.loc, "ambiguous identifier '" + p.name + "': both parameter and enumerator");
    }
    auto [it, inserted] = st.sigs_.emplace(m.name, s);
    if (!inserted && !same_shape(it->second, s))
      fail(m.loc, "function '" + m.name + "' is declared with conflicting signatures (one signature per function name)");
  };

  // Target class declarations.
  {
    std::set<std::string> names;
    for (const FieldDecl& f : tc->fields) {
      check_type(f.type, f.loc);
      if (!names.insert(f.name).second) fail(f.loc, "duplicate field '" + f.name + "'");
      if (st.lit_owner_.count(f.name))
        fail(f.loc, "ambiguous identifier '" + f.name + "': both field and enumerator");
      st.fields_.emplace(f.name, f.type);
    }
    for (const MemberDecl& m : tc->members) {
      if (!st.class_names_.count(m.class_name)) fail(m.loc, "unknown class '" + m.class_name + "'");
      if (!names.insert(m.name).second) fail(m.loc, "duplicate member '" + m.name + "'");
      if (st.lit_owner_.count(m.name))
        fail(m.loc, "ambiguous identifier '" + m.name + "': both member and enumerator");
      st.members_.emplace(m.name, m.class_name);
    }
    std::set<std::string> method_names;
    for (const MethodDecl& m : tc->methods) {
      if (!method_names.insert(m.name).second)
        fail(m.loc, "method overloading is not supported ('" + m.name + "')");
      st.target_methods_.emplace(m.name, sig_of(target, m));
      add_sig(target, m);
    }
  }

  // Member interfaces: methods callable through the target's members.
  for (const auto& [member, cls] : st.members_) {
    (void)member;
    for (const ClassDecl& cd : tu.classes) {
      if (cd.name != cls) continue;
      std::set<std::string> method_names;
      for (const MethodDecl& m : cd.methods) {
        if (!method_names.insert(m.name).second)
          fail(m.loc, "method overloading is not supported ('" + m.name + "')");
        add_sig(cd.name, m);
      }
    }
  }

  // Global functions.
  {
    std::set<std::string> names;
    for (const MethodDecl& m : tu.global_funcs) {
      if (!names.insert(m.name).second)
        fail(m.loc, "duplicate global function '" + m.name + "'");
      add_sig("", m);
    }
  }

  return st;
}

scpp::Scope SymbolTable::scope_of(const std::string& method, const std::string& id) const {
  auto it = target_methods_.find(method);
  if (it != target_methods_.end()) {
    for (const std::string& p : it->second.param_names)
      if (p == id) return scpp::Scope::Local;
  }
  if (is_field(id) || is_member(id)) return scpp::Scope::Global;
  throw MooError(filename_, SourceLoc{0, 0}, "use of undeclared identifier '" + id + "'");
}

bool SymbolTable::is_ref_param(const std::string& method, const std::string& id) const {
  auto it = target_methods_.find(method);
  if (it == target_methods_.end()) return false;
  for (std::size_t i = 0; i < it->second.param_names.size(); ++i)
    if (it->second.param_names[i] == id) return it->second.by_ref[i];
  return false;
}

bool SymbolTable::ref_arg(const std::string& func, std::size_t i, SourceLoc at) const {
  auto it = sigs_.find(func);
  if (it == sigs_.end()) throw MooError(filename_, at, "call to unknown function '" + func + "'");
  if (i >= it->second.by_ref.size())
    throw MooError(filename_, at,
                   "too many arguments in call to '" + func + "' (expected " +
                       std::to_string(it->second.by_ref.size()) + ")");
  return it->second.by_ref[i];
}

}  // namespace moolts::moo
