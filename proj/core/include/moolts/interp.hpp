#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "moolts/action.hpp"
#include "moolts/moo_ast.hpp"
#include "moolts/value.hpp"

namespace moolts::interp {

struct ScriptCall {
  std::string func;
  std::vector<scpp::Value> args;
};

struct ScriptInstance {
  std::string id;
  std::string cls;
  std::vector<std::pair<std::string, scpp::Value>> fields;   // unset fields default to void
  std::vector<std::pair<std::string, std::string>> members;  // member name → instance id
};

struct Script {
  std::string target;  // instance id receiving the scripted calls
  std::vector<ScriptInstance> instances;
  std::vector<ScriptCall> calls;
  std::vector<std::pair<std::string, scpp::Value>> globals;  // initial global variable values
};

struct InterpResult {
  // Comm-polarity labels: inter-instance calls/returns/throws plus
  // cross-instance and global-namespace loads/stores, in execution order.
  std::vector<scpp::ActionLabel> log;
  std::map<std::string, std::map<std::string, scpp::Value>> final_fields;
};

// Big-step interpreter over the source AST; the brute-force oracle. By-ref
// top-level arguments are seeded as "__top<i>" reference cells (i = parameter
// position) whose final values appear in the return label. Throws
// moo::MooError on setup and evaluation errors.
InterpResult run_program(const moo::TranslationUnit& tu, const Script& script,
                         const std::string& filename);

}  // namespace moolts::interp
