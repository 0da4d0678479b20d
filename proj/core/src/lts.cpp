#include "moolts/lts.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace moolts::lts {

void Lts::normalize() {
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

bool label_matches(const std::string& pattern, const std::string& label) {
  if (!pattern.empty() && pattern.back() == '*') {
    return label.compare(0, pattern.size() - 1, pattern, 0, pattern.size() - 1) == 0;
  }
  return pattern == label;
}

Lts hide_labels(Lts l, const std::vector<std::string>& patterns) {
  return hide_if(std::move(l), [&](const std::string& label) {
    for (const auto& p : patterns)
      if (label_matches(p, label)) return true;
    return false;
  });
}

Lts rename_labels(Lts l, const std::vector<RenameRule>& rules) {
  for (auto& t : l.transitions) {
    if (t.label == kTau) continue;
    for (const auto& r : rules) {
      if (label_matches(r.pattern, t.label)) {
        t.label = r.replacement;
        break;
      }
    }
  }
  l.normalize();
  return l;
}

namespace {

void write_quoted(std::ostream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    if (c == '"' || c == '\\') os << '\\';
    os << c;
  }
  os << '"';
}

[[noreturn]] void bad_line(std::size_t lineno, const std::string& why) {
  throw LtsError("aut line " + std::to_string(lineno) + ": " + why);
}

// Parses an unsigned decimal, advancing pos past it and surrounding spaces.
std::uint64_t parse_num(const std::string& s, std::size_t& pos, std::size_t lineno) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
    bad_line(lineno, "expected a number");
  std::uint64_t n = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    n = n * 10 + static_cast<std::uint64_t>(s[pos] - '0');
    if (n > 0xffffffffull) bad_line(lineno, "number out of range");
    ++pos;
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  return n;
}

void expect(const std::string& s, std::size_t& pos, char c, std::size_t lineno) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos >= s.size() || s[pos] != c) bad_line(lineno, std::string("expected '") + c + "'");
  ++pos;
}

std::string parse_quoted(const std::string& s, std::size_t& pos, std::size_t lineno) {
  expect(s, pos, '"', lineno);
  std::string out;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '\\') {
      if (pos + 1 >= s.size()) bad_line(lineno, "dangling escape in label");
      out += s[++pos];
    } else if (c == '"') {
      ++pos;
      return out;
    } else {
      out += c;
    }
  }
  bad_line(lineno, "unterminated label");
}

}  // namespace

void export_aut(const Lts& l, std::ostream& os) {
  os << "des (" << l.initial << ',' << l.transitions.size() << ',' << l.num_states << ")\n";
  for (const auto& t : l.transitions) {
    os << '(' << t.from << ',';
    write_quoted(os, t.label);
    os << ',' << t.to << ")\n";
  }
}

std::string to_aut(const Lts& l) {
  std::ostringstream os;
  export_aut(l, os);
  return os.str();
}

Lts import_aut(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;

  // Header.
  Lts l;
  std::uint64_t promised = 0;
  for (;;) {
    if (!std::getline(is, line)) throw LtsError("aut input is empty");
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t pos = line.find_first_not_of(" \t");
    if (line.compare(pos, 3, "des") != 0) bad_line(lineno, "expected 'des' header");
    pos += 3;
    expect(line, pos, '(', lineno);
    l.initial = static_cast<std::uint32_t>(parse_num(line, pos, lineno));
    expect(line, pos, ',', lineno);
    promised = parse_num(line, pos, lineno);
    expect(line, pos, ',', lineno);
    l.num_states = static_cast<std::uint32_t>(parse_num(line, pos, lineno));
    expect(line, pos, ')', lineno);
    break;
  }
  if (l.num_states == 0) throw LtsError("aut header declares zero states");
  if (l.initial >= l.num_states) throw LtsError("aut initial state out of range");

  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t pos = 0;
    Transition t;
    expect(line, pos, '(', lineno);
    t.from = static_cast<std::uint32_t>(parse_num(line, pos, lineno));
    expect(line, pos, ',', lineno);
    t.label = parse_quoted(line, pos, lineno);
    expect(line, pos, ',', lineno);
    t.to = static_cast<std::uint32_t>(parse_num(line, pos, lineno));
    expect(line, pos, ')', lineno);
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos != line.size()) bad_line(lineno, "trailing garbage after transition");
    if (t.from >= l.num_states || t.to >= l.num_states)
      bad_line(lineno, "state index out of range");
    l.transitions.push_back(std::move(t));
  }
  if (l.transitions.size() != promised)
    throw LtsError("aut header promises " + std::to_string(promised) + " transitions, found " +
                   std::to_string(l.transitions.size()));
  l.normalize();
  return l;
}

Lts import_aut_string(const std::string& text) {
  std::istringstream is(text);
  return import_aut(is);
}

}  // namespace moolts::lts
