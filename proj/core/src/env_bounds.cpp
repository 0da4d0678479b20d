#include "moolts/env_bounds.hpp"

#include <algorithm>
#include <utility>

namespace moolts::env {

using scpp::Value;

BoundedType BoundedType::number_ranges(std::vector<Range> rs) {
  BoundedType b;
  b.kind = Kind::Number;
  b.ranges = std::move(rs);
  return b;
}

BoundedType BoundedType::number_constants(const std::vector<std::int64_t>& cs) {
  BoundedType b;
  b.kind = Kind::Number;
  for (std::int64_t c : cs) b.ranges.push_back({c, c, 1});
  return b;
}

BoundedType BoundedType::boolean(bool allow_true, bool allow_false) {
  BoundedType b;
  b.kind = Kind::Boolean;
  b.allow_true = allow_true;
  b.allow_false = allow_false;
  return b;
}

BoundedType BoundedType::void_only() {
  BoundedType b;
  b.kind = Kind::Void;
  return b;
}

BoundedType BoundedType::ordered_set(std::vector<std::int64_t> sizes, BoundedType element) {
  BoundedType b;
  b.kind = Kind::OrderedSet;
  b.set_sizes = std::move(sizes);
  b.element = std::make_shared<BoundedType>(std::move(element));
  return b;
}

BoundedType BoundedType::ptype(std::string category) {
  BoundedType b;
  b.kind = Kind::PType;
  b.category = std::move(category);
  return b;
}

BoundedType BoundedType::enumeration(std::string name, std::vector<std::string> literals) {
  BoundedType b;
  b.kind = Kind::Enum;
  b.enum_name = std::move(name);
  b.enum_literals = std::move(literals);
  return b;
}

BoundedType BoundedType::strings(std::vector<std::string> literals) {
  BoundedType b;
  b.kind = Kind::String;
  b.string_literals = std::move(literals);
  return b;
}

namespace {

void validate_ranges(const std::vector<BoundedType::Range>& rs) {
  for (const auto& r : rs) {
    if (r.step <= 0) throw ConfigError("range step must be positive");
    if (r.lo > r.hi) throw ConfigError("range lower bound exceeds upper bound");
  }
}

// All sequences of length n over elems, appended to out.
void sequences(const std::vector<Value>& elems, std::size_t n, std::vector<Value>& scratch,
               std::vector<Value>& out) {
  if (scratch.size() == n) {
    out.push_back(Value::ordered_set(scratch));
    return;
  }
  for (const auto& e : elems) {
    scratch.push_back(e);
    sequences(elems, n, scratch, out);
    scratch.pop_back();
  }
}

}  // namespace

std::vector<Value> enumerate_bound(const BoundedType& b, const Categories& categories) {
  std::vector<Value> out;
  switch (b.kind) {
    case BoundedType::Kind::Number: {
      validate_ranges(b.ranges);
      for (const auto& r : b.ranges)
        for (std::int64_t v = r.lo; v <= r.hi; v += r.step) {
          out.push_back(Value::number(v));
          if (r.hi - v < r.step) break;  // would overflow past hi
        }
      break;
    }
    case BoundedType::Kind::Boolean:
      if (b.allow_false) out.push_back(Value::boolean(false));
      if (b.allow_true) out.push_back(Value::boolean(true));
      break;
    case BoundedType::Kind::Void:
      out.push_back(Value::void_value());
      break;
    case BoundedType::Kind::OrderedSet: {
      if (!b.element) throw ConfigError("set bound is missing its element bound");
      std::vector<Value> elems = enumerate_bound(*b.element, categories);
      for (std::int64_t size : b.set_sizes) {
        if (size < 0) throw ConfigError("set bound size must be non-negative");
        std::vector<Value> scratch;
        sequences(elems, static_cast<std::size_t>(size), scratch, out);
      }
      break;
    }
    case BoundedType::Kind::PType: {
      auto it = categories.find(b.category);
      if (it == categories.end())
        throw ConfigError("unknown dynamic category '" + b.category + "'");
      for (const auto& p : it->second.members) out.push_back(Value::ptype(p));
      break;
    }
    case BoundedType::Kind::Enum:
      for (const auto& lit : b.enum_literals) out.push_back(Value::enum_lit(lit));
      break;
    case BoundedType::Kind::String:
      for (const auto& s : b.string_literals) out.push_back(Value::string(s));
      break;
    case BoundedType::Kind::Unknown:
      throw ConfigError("bound of unknown type: user input required");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw ConfigError("bound enumerates to no values");
  return out;
}

bool is_within_bounds(const Value& v, const BoundedType& b, const Categories& categories) {
  const std::vector<Value> all = enumerate_bound(b, categories);
  return std::find(all.begin(), all.end(), v) != all.end();
}

}  // namespace moolts::env
