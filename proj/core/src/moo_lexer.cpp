#include "moolts/moo_lexer.hpp"

#include <cctype>

namespace moolts::moo {
namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Longest-match first.
const char* kPuncts[] = {"...", "::", "->", "++", "==", "!=", "<=", ">=", "&&", "||",
                         "{",   "}",  "(",  ")",  "[",  "]",  ";",  ",",  ":",  "?",
                         "<",   ">",  "=",  "!",  "+",  "-",  "*",  "/",  "&",  "."};

}  // namespace

std::vector<Token> tokenize(const std::string& source, const std::string& filename) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;

  auto loc = [&] { return SourceLoc{line, col}; };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < source.size(); ++k, ++i) {
      if (source[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < source.size()) {
    const char c = source[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < source.size() && source[i + 1] == '/') {
      while (i < source.size() && source[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < source.size() && source[i + 1] == '*') {
      const SourceLoc start = loc();
      advance(2);
      while (i + 1 < source.size() && !(source[i] == '*' && source[i + 1] == '/')) advance(1);
      if (i + 1 >= source.size()) throw MooError(filename, start, "unterminated block comment");
      advance(2);
      continue;
    }
    if (ident_start(c)) {
      const SourceLoc start = loc();
      std::size_t j = i;
      while (j < source.size() && ident_char(source[j])) ++j;
      Token t{Token::Kind::Ident, source.substr(i, j - i), start};
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const SourceLoc start = loc();
      std::size_t j = i;
      while (j < source.size() && std::isdigit(static_cast<unsigned char>(source[j]))) ++j;
      if (j < source.size() && (ident_start(source[j]) || source[j] == '.'))
        throw MooError(filename, start, "malformed number literal");
      Token t{Token::Kind::IntLit, source.substr(i, j - i), start};
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '"') {
      const SourceLoc start = loc();
      advance(1);
      std::string value;
      bool closed = false;
      while (i < source.size()) {
        const char d = source[i];
        if (d == '\n') break;
        if (d == '"') {
          advance(1);
          closed = true;
          break;
        }
        if (d == '\\') {
          if (i + 1 >= source.size()) break;
          const char e = source[i + 1];
          if (e == '"' || e == '\\') {
            value.push_back(e);
            advance(2);
            continue;
          }
          throw MooError(filename, loc(), std::string("unsupported escape sequence '\\") + e + "'");
        }
        value.push_back(d);
        advance(1);
      }
      if (!closed) throw MooError(filename, start, "unterminated string literal");
      out.push_back(Token{Token::Kind::StringLit, std::move(value), start});
      continue;
    }
    bool matched = false;
    for (const char* p : kPuncts) {
      const std::size_t n = std::char_traits<char>::length(p);
      if (source.compare(i, n, p) == 0) {
        out.push_back(Token{Token::Kind::Punct, p, loc()});
        advance(n);
        matched = true;
        break;
      }
    }
    if (!matched) throw MooError(filename, loc(), std::string("illegal character '") + c + "'");
  }

  out.push_back(Token{Token::Kind::End, "", loc()});
  return out;
}

}  // namespace moolts::moo
