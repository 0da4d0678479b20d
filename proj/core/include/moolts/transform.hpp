#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moolts/ids.hpp"
#include "moolts/moo_ast.hpp"
#include "moolts/moo_symbols.hpp"
#include "moolts/stmt.hpp"
#include "moolts/value.hpp"

namespace moolts::xform {

struct MethodMeta {
  scpp::Value::Kind return_kind = scpp::Value::Kind::Void;  // declared return type
  bool can_throw = false;  // syntactic: a reachable throw, or a call into one (own-class fixpoint)
};

struct Diagnostic {
  std::string method;  // "<ctor>" for constructor problems
  moo::SourceLoc loc;
  std::string message;
};

// Per-class lowering result: the program map driving the stable process, plus
// the declaration tables the environment layer needs.
struct ClassModel {
  std::string class_name;
  std::map<scpp::FuncId, scpp::Program> get_prog;                  // transformed methods only
  std::map<scpp::FuncId, std::vector<scpp::VarId>> param_names;    // every declared method
  std::map<scpp::FuncId, std::vector<bool>> by_ref;                // per-position reference flags
  std::map<scpp::FuncId, MethodMeta> meta;                         // every declared method
  std::optional<scpp::Program> ctor_prog;
  std::map<std::string, moo::Type> fields;
  std::map<std::string, std::string> members;  // member name → class name
  std::map<std::string, std::vector<std::string>> enums;
  std::vector<Diagnostic> diagnostics;  // methods that failed to transform

  bool can_throw(const scpp::FuncId& f) const {
    auto it = meta.find(f);
    return it != meta.end() && it->second.can_throw;
  }
};

// Lowers one class to its SCPP model. Methods that fail to transform are
// collected into diagnostics without aborting the rest. Symbol-table
// construction failures throw moo::MooError.
ClassModel transform_class(const moo::TranslationUnit& tu, const std::string& target,
                           const std::string& filename);

}  // namespace moolts::xform
