#pragma once

#include <string>
#include <vector>

#include "moolts/moo_ast.hpp"

namespace moolts::moo {

struct Token {
  enum class Kind { End, Ident, IntLit, StringLit, Punct };
  Kind kind = Kind::End;
  std::string text;  // exact lexeme; StringLit holds the decoded value
  SourceLoc loc;
};

// Comments (// and /* */) are stripped. Throws MooError on lexical errors.
std::vector<Token> tokenize(const std::string& source, const std::string& filename);

}  // namespace moolts::moo
