#include "moolts/value.hpp"

#include <algorithm>

#include "moolts/stmt.hpp"

namespace moolts::scpp {

Value::Value() { rehash(); }

Value Value::number(std::int64_t n) {
  Value v;
  v.kind_ = Kind::Number;
  v.num_ = n;
  v.rehash();
  return v;
}

Value Value::boolean(bool b) {
  Value v;
  v.kind_ = Kind::Boolean;
  v.bool_ = b;
  v.rehash();
  return v;
}

Value Value::ordered_set(std::vector<Value> elems) {
  Value v;
  v.kind_ = Kind::OrderedSet;
  v.elems_ = std::make_shared<const std::vector<Value>>(std::move(elems));
  v.rehash();
  return v;
}

Value Value::void_value() { return Value{}; }

Value Value::ptype(ProcId p) {
  Value v;
  v.kind_ = Kind::PType;
  v.s1_ = std::move(p);
  v.rehash();
  return v;
}

Value Value::enum_lit(EnumLit lit) {
  Value v;
  v.kind_ = Kind::Enum;
  v.s1_ = std::move(lit);
  v.rehash();
  return v;
}

Value Value::field_ref(ProcId proc, VarId field) {
  Value v;
  v.kind_ = Kind::FieldRef;
  v.s1_ = std::move(proc);
  v.s2_ = std::move(field);
  v.rehash();
  return v;
}

Value Value::local_ref(VarId var) {
  Value v;
  v.kind_ = Kind::LocalRef;
  v.s1_ = std::move(var);
  v.rehash();
  return v;
}

Value Value::lambda(LambdaParts parts) {
  Value v;
  v.kind_ = Kind::Lambda;
  v.lambda_ = std::make_shared<const LambdaParts>(std::move(parts));
  v.rehash();
  return v;
}

Value Value::string(std::string s) {
  Value v;
  v.kind_ = Kind::String;
  v.s1_ = std::move(s);
  v.rehash();
  return v;
}

std::int64_t Value::number_value() const { return num_; }
bool Value::boolean_value() const { return bool_; }
const std::vector<Value>& Value::elements() const { return *elems_; }
const ProcId& Value::proc() const { return s1_; }
const VarId& Value::field() const { return s2_; }
const VarId& Value::var() const { return s1_; }
const EnumLit& Value::enum_literal() const { return s1_; }
const LambdaParts& Value::lambda_parts() const { return *lambda_; }
const std::string& Value::string_literal() const { return s1_; }

void Value::rehash() {
  std::uint64_t h = hash_mix(0xabcd, static_cast<std::uint64_t>(kind_));
  switch (kind_) {
    case Kind::Number:
      h = hash_mix(h, static_cast<std::uint64_t>(num_));
      break;
    case Kind::Boolean:
      h = hash_mix(h, bool_ ? 1 : 0);
      break;
    case Kind::OrderedSet:
      for (const Value& e : *elems_) h = hash_mix(h, e.hash());
      break;
    case Kind::Void:
      break;
    case Kind::PType:
    case Kind::Enum:
    case Kind::LocalRef:
    case Kind::String:
      h = hash_mix(h, hash_str(s1_));
      break;
    case Kind::FieldRef:
      h = hash_mix(h, hash_str(s1_));
      h = hash_mix(h, hash_str(s2_));
      break;
    case Kind::Lambda: {
      const LambdaParts& l = *lambda_;
      for (const VarId& p : l.params) h = hash_mix(h, hash_str(p));
      for (const auto& [id, v] : l.copied) {
        h = hash_mix(h, hash_str(id));
        h = hash_mix(h, v.hash());
      }
      for (const VarId& r : l.ref_captures) h = hash_mix(h, hash_str(r));
      h = hash_mix(h, hash_program(l.body));
      break;
    }
  }
  hash_ = h;
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_ || a.hash_ != b.hash_) return false;
  switch (a.kind_) {
    case Value::Kind::Number:
      return a.num_ == b.num_;
    case Value::Kind::Boolean:
      return a.bool_ == b.bool_;
    case Value::Kind::OrderedSet:
      return a.elems_ == b.elems_ || *a.elems_ == *b.elems_;
    case Value::Kind::Void:
      return true;
    case Value::Kind::PType:
    case Value::Kind::Enum:
    case Value::Kind::LocalRef:
    case Value::Kind::String:
      return a.s1_ == b.s1_;
    case Value::Kind::FieldRef:
      return a.s1_ == b.s1_ && a.s2_ == b.s2_;
    case Value::Kind::Lambda: {
      if (a.lambda_ == b.lambda_) return true;
      const LambdaParts& x = *a.lambda_;
      const LambdaParts& y = *b.lambda_;
      return x.params == y.params && x.copied == y.copied && x.ref_captures == y.ref_captures &&
             x.body == y.body;
    }
  }
  return false;
}

int compare(const Value& a, const Value& b) {
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  auto cmp_str = [](const std::string& x, const std::string& y) { return x.compare(y); };
  switch (a.kind()) {
    case Value::Kind::Number:
      return a.number_value() < b.number_value() ? -1 : a.number_value() > b.number_value() ? 1 : 0;
    case Value::Kind::Boolean:
      return static_cast<int>(a.boolean_value()) - static_cast<int>(b.boolean_value());
    case Value::Kind::OrderedSet: {
      const auto& x = a.elements();
      const auto& y = b.elements();
      for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        int c = compare(x[i], y[i]);
        if (c != 0) return c;
      }
      return x.size() < y.size() ? -1 : x.size() > y.size() ? 1 : 0;
    }
    case Value::Kind::Void:
      return 0;
    case Value::Kind::PType:
      return cmp_str(a.proc(), b.proc());
    case Value::Kind::Enum:
      return cmp_str(a.enum_literal(), b.enum_literal());
    case Value::Kind::FieldRef: {
      int c = cmp_str(a.proc(), b.proc());
      return c != 0 ? c : a.field().compare(b.field());
    }
    case Value::Kind::LocalRef:
      return cmp_str(a.var(), b.var());
    case Value::Kind::Lambda:
      return a.hash() < b.hash() ? -1 : a.hash() > b.hash() ? 1 : 0;
    case Value::Kind::String:
      return cmp_str(a.string_literal(), b.string_literal());
  }
  return 0;
}

std::string render_value(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Number:
      return std::to_string(v.number_value());
    case Value::Kind::Boolean:
      return v.boolean_value() ? "true" : "false";
    case Value::Kind::OrderedSet: {
      std::string out = "[";
      bool first = true;
      for (const Value& e : v.elements()) {
        if (!first) out += ",";
        first = false;
        out += render_value(e);
      }
      out += "]";
      return out;
    }
    case Value::Kind::Void:
      return "void";
    case Value::Kind::PType:
      return v.proc();
    case Value::Kind::Enum:
      return v.enum_literal();
    case Value::Kind::FieldRef:
      return "&" + v.proc() + "." + v.field();
    case Value::Kind::LocalRef:
      return "&" + v.var();
    case Value::Kind::Lambda:
      return "<lambda>";
    case Value::Kind::String: {
      std::string out = "\"";
      for (char c : v.string_literal()) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += "\"";
      return out;
    }
  }
  return "?";
}

}  // namespace moolts::scpp
