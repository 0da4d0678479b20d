#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moolts/ids.hpp"
#include "moolts/moo_ast.hpp"

namespace moolts::moo {

struct MethodSig {
  std::string owner;  // declaring class; empty for global functions
  Type return_type;
  std::vector<std::string> param_names;
  std::vector<bool> by_ref;
  bool has_body = false;
  SourceLoc loc;
};

// Name environment for one target class: realizes the scope mapping for fields
// and members, reference flags for parameters, the enumerator predicate, the
// known-function predicate (target methods plus member interfaces plus global
// functions), and per-position by-reference argument flags. Local variables
// are layered on top by the transformer's block scopes.
class SymbolTable {
 public:
  // Throws MooError on duplicate/ambiguous declarations and unresolved types.
  static SymbolTable build(const TranslationUnit& tu, const std::string& target,
                           const std::string& filename);

  const std::string& target() const { return target_; }
  const std::string& filename() const { return filename_; }

  bool is_field(const std::string& id) const { return fields_.count(id) != 0; }
  bool is_member(const std::string& id) const { return members_.count(id) != 0; }
  bool is_enum_lit(const std::string& id) const { return lit_owner_.count(id) != 0; }
  bool is_target_method(const std::string& id) const { return target_methods_.count(id) != 0; }
  bool is_known_func(const std::string& id) const { return sigs_.count(id) != 0; }
  bool is_global_var(const std::string& id) const { return global_vars_.count(id) != 0; }
  bool is_global_func(const std::string& id) const {
    auto it = sigs_.find(id);
    return it != sigs_.end() && it->second.owner.empty();
  }

  // Scope of an identifier as seen from a target method's body top level
  // (parameters local, fields/members global). Throws MooError on unknown ids.
  scpp::Scope scope_of(const std::string& method, const std::string& id) const;

  // R on parameters of a target method.
  bool is_ref_param(const std::string& method, const std::string& id) const;

  // R_A(f, i); throws MooError when f is unknown or i out of range.
  bool ref_arg(const std::string& func, std::size_t i, SourceLoc at) const;

  const MethodSig* find_sig(const std::string& func) const {
    auto it = sigs_.find(func);
    return it == sigs_.end() ? nullptr : &it->second;
  }

  const std::map<std::string, Type>& fields() const { return fields_; }
  const std::map<std::string, std::string>& members() const { return members_; }
  const std::map<std::string, std::vector<std::string>>& enums() const { return enums_; }
  const std::map<std::string, Type>& global_vars() const { return global_vars_; }
  const std::string& enum_of_literal(const std::string& lit) const {
    return lit_owner_.at(lit);
  }
  bool is_class(const std::string& id) const { return class_names_.count(id) != 0; }

 private:
  std::string target_;
  std::string filename_;
  std::map<std::string, Type> fields_;          // target fields
  std::map<std::string, std::string> members_;  // target members → class name
  std::map<std::string, MethodSig> target_methods_;
  std::map<std::string, MethodSig> sigs_;  // all callable functions, unified signatures
  std::map<std::string, std::vector<std::string>> enums_;
  std::map<std::string, std::string> lit_owner_;  // enumerator → enum name
  std::map<std::string, Type> global_vars_;
  std::map<std::string, char> class_names_;
};

}  // namespace moolts::moo
