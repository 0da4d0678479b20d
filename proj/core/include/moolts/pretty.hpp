#pragma once

#include <string>

#include "moolts/stmt.hpp"

namespace moolts::scpp {

// Constructor-call notation with nested statement lists indented, one
// statement per line. Deterministic; used by the transform dump and tests.
std::string pretty_expr(const Expr& e);
std::string pretty_stmt(const Stmt& s, int indent = 0);
std::string pretty_program(const Program& p, int indent = 0);

}  // namespace moolts::scpp
