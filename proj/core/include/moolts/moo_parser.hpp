#pragma once

#include <string>

#include "moolts/moo_ast.hpp"

namespace moolts::moo {

// Lexes and parses one MOO translation unit. Throws MooError with
// "file:line:col: message" diagnostics.
TranslationUnit parse_translation_unit(const std::string& source, const std::string& filename);

}  // namespace moolts::moo
