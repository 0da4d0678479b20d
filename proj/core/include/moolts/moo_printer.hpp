#pragma once

#include <string>

#include "moolts/moo_ast.hpp"

namespace moolts::moo {

// Canonical source form; parse(print(tu)) is structurally identical to tu.
std::string print_translation_unit(const TranslationUnit& tu);
std::string print_type(const Type& t);
std::string print_expr(const Expr& e);
std::string print_stmt(const Stmt& s, int indent = 0);

}  // namespace moolts::moo
