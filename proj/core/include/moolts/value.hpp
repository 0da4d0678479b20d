#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "moolts/ids.hpp"

namespace moolts::scpp {

class Stmt;
using Program = std::vector<Stmt>;

class Value;

// Local reference arguments: an ordered association list, not a map. Order and
// duplicates are significant (first match wins on lookup/update).
using Lra = std::vector<std::pair<VarId, Value>>;

// Payload of a lambda value: parameters, by-copy captures snapshotted at
// creation time, by-reference capture names, and the transformed body.
struct LambdaParts {
  std::vector<VarId> params;
  Lra copied;
  std::vector<VarId> ref_captures;
  Program body;
};

// Immutable runtime value. Cheap to copy (payloads are shared).
class Value {
 public:
  enum class Kind : std::uint8_t {
    Number,
    Boolean,
    OrderedSet,
    Void,
    PType,
    Enum,
    FieldRef,
    LocalRef,
    Lambda,
    String,
  };

  Value();  // VoidType

  static Value number(std::int64_t n);
  static Value boolean(bool b);
  static Value ordered_set(std::vector<Value> elems);
  static Value void_value();
  static Value ptype(ProcId p);
  static Value enum_lit(EnumLit lit);
  static Value field_ref(ProcId proc, VarId field);
  static Value local_ref(VarId var);
  static Value lambda(LambdaParts parts);
  static Value string(std::string s);

  Kind kind() const { return kind_; }
  bool is(Kind k) const { return kind_ == k; }
  bool is_reference() const { return kind_ == Kind::FieldRef || kind_ == Kind::LocalRef; }

  std::int64_t number_value() const;
  bool boolean_value() const;
  const std::vector<Value>& elements() const;      // OrderedSet
  const ProcId& proc() const;                      // PType, FieldRef
  const VarId& field() const;                      // FieldRef
  const VarId& var() const;                        // LocalRef
  const EnumLit& enum_literal() const;             // Enum
  const LambdaParts& lambda_parts() const;         // Lambda
  const std::string& string_literal() const;       // String

  std::uint64_t hash() const { return hash_; }

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

 private:
  Kind kind_ = Kind::Void;
  std::int64_t num_ = 0;
  bool bool_ = false;
  std::string s1_;  // PType proc / Enum literal / FieldRef proc / LocalRef var / String literal
  std::string s2_;  // FieldRef field
  std::shared_ptr<const std::vector<Value>> elems_;
  std::shared_ptr<const LambdaParts> lambda_;
  std::uint64_t hash_ = 0;

  void rehash();
};

// Total order over values, by kind rank then payload; gives the canonical
// ordering used for enumerations and deterministic output. Lambdas compare by
// structural hash (they never appear in enumerations).
int compare(const Value& a, const Value& b);
inline bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }

// Canonical rendering: "5", "true", "void", "[1,2]", proc/enum names bare,
// "&p.x", "&x", "<lambda>", strings double-quoted with backslash escapes.
std::string render_value(const Value& v);

}  // namespace moolts::scpp
