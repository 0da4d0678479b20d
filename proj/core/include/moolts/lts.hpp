#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace moolts::lts {

class LtsError : public std::runtime_error {
 public:
  explicit LtsError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Transition {
  std::uint32_t from = 0;
  std::string label;
  std::uint32_t to = 0;

  friend bool operator==(const Transition& a, const Transition& b) {
    return a.from == b.from && a.label == b.label && a.to == b.to;
  }
  friend bool operator<(const Transition& a, const Transition& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.label != b.label) return a.label < b.label;
    return a.to < b.to;
  }
};

// Labeled transition system over rendered action strings; "tau" is the
// internal action. Kept in canonical form (transitions sorted, deduplicated)
// by normalize(), which all producers call before handing an Lts out.
struct Lts {
  std::uint32_t num_states = 0;
  std::uint32_t initial = 0;
  std::vector<Transition> transitions;

  void normalize();

  friend bool operator==(const Lts& a, const Lts& b) {
    return a.num_states == b.num_states && a.initial == b.initial &&
           a.transitions == b.transitions;
  }
};

inline const std::string kTau = "tau";

// Renames every label matched by the predicate to "tau".
template <typename Pred>
Lts hide_if(Lts l, Pred&& keep_hidden) {
  for (auto& t : l.transitions)
    if (t.label != kTau && keep_hidden(t.label)) t.label = kTau;
  l.normalize();
  return l;
}

// Pattern matching for hide/rename sets: a pattern is either a literal label
// or a prefix followed by '*' ("call_func(p,*"). Only a trailing '*' is
// special.
bool label_matches(const std::string& pattern, const std::string& label);

// Hides every label matching one of the patterns.
Lts hide_labels(Lts l, const std::vector<std::string>& patterns);

// First matching rule wins; "tau" is never renamed.
struct RenameRule {
  std::string pattern;
  std::string replacement;
};
Lts rename_labels(Lts l, const std::vector<RenameRule>& rules);

// Aldebaran format: header "des (initial, #transitions, #states)" then one
// "(from,\"label\",to)" line per transition.
void export_aut(const Lts& l, std::ostream& os);
std::string to_aut(const Lts& l);

// Parses .aut text; malformed input raises LtsError naming the line.
Lts import_aut(std::istream& is);
Lts import_aut_string(const std::string& text);

}  // namespace moolts::lts
