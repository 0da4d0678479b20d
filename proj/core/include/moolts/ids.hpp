#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace moolts::scpp {

// Identifier universes. All are interned as plain strings; the distinction is
// documentation plus the places where they may appear.
using VarId = std::string;
using FuncId = std::string;
using ProcId = std::string;
using Label = std::string;
using EnumLit = std::string;

enum class Scope : std::uint8_t { Local, Global };
enum class FlagKind : std::uint8_t { Continue, Break };

inline const char* to_string(Scope s) { return s == Scope::Local ? "local" : "global"; }
inline const char* to_string(FlagKind k) { return k == FlagKind::Continue ? "continue" : "break"; }

// The transformer owns these prefixes; user identifiers must not use them.
inline constexpr std::string_view kFreshVarPrefix = "__fv";
inline constexpr std::string_view kFreshLabelPrefix = "__lbl";

inline bool is_fresh_var(std::string_view id) { return id.starts_with(kFreshVarPrefix); }
inline bool is_fresh_label(std::string_view id) { return id.starts_with(kFreshLabelPrefix); }
inline bool has_reserved_prefix(std::string_view id) { return is_fresh_var(id) || is_fresh_label(id); }

// Reserved process identifier for namespace-scope state and functions.
inline constexpr std::string_view kGlobalNamespace = "GlobalNamespace";

// 64-bit structural hash helper (FNV-1a style mixing).
inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}
inline std::uint64_t hash_str(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace moolts::scpp
