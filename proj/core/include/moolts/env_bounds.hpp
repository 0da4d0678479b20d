#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "moolts/ids.hpp"
#include "moolts/value.hpp"

namespace moolts::env {

// Misconfiguration (as opposed to an engine defect): unbounded enumeration,
// missing stub bound, dangling category, and similar.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A value type plus an enumerable bound. Unknown carries no bound and cannot
// be enumerated (the configuration must supply a concrete type instead).
struct BoundedType {
  enum class Kind : std::uint8_t {
    Number,
    Boolean,
    Void,
    OrderedSet,
    PType,
    Enum,
    String,
    Unknown,
  };

  struct Range {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::int64_t step = 1;  // > 0; a constant c is the range (c, c, 1)
  };

  Kind kind = Kind::Unknown;
  std::vector<Range> ranges;                  // Number: union of ranges
  bool allow_true = true;                     // Boolean
  bool allow_false = true;                    // Boolean
  std::vector<std::int64_t> set_sizes;        // OrderedSet: allowed sizes
  std::shared_ptr<BoundedType> element;       // OrderedSet
  std::string category;                       // PType: dynamic category name
  std::string enum_name;                      // Enum
  std::vector<std::string> enum_literals;     // Enum: resolved literal names
  std::vector<std::string> string_literals;   // String: finite set

  static BoundedType number_ranges(std::vector<Range> rs);
  static BoundedType number_constants(const std::vector<std::int64_t>& cs);
  static BoundedType boolean(bool allow_true = true, bool allow_false = true);
  static BoundedType void_only();
  static BoundedType ordered_set(std::vector<std::int64_t> sizes, BoundedType element);
  static BoundedType ptype(std::string category);
  static BoundedType enumeration(std::string name, std::vector<std::string> literals);
  static BoundedType strings(std::vector<std::string> literals);
};

// Named collection of process implementations usable as class-typed values.
struct DynamicCategory {
  std::string name;
  std::vector<scpp::ProcId> members;
};

using Categories = std::map<std::string, DynamicCategory>;

// Exactly the values satisfying b: finite, duplicate-free, canonically
// ordered. Throws ConfigError on Unknown, a dangling category, or an empty
// enumeration.
std::vector<scpp::Value> enumerate_bound(const BoundedType& b, const Categories& categories);

bool is_within_bounds(const scpp::Value& v, const BoundedType& b, const Categories& categories);

}  // namespace moolts::env
