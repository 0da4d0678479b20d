#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "moolts/env_process.hpp"
#include "moolts/lts.hpp"

namespace moolts::env {

// Exploration aborts: an engine defect reached from the initial configuration
// (message carries the shortest trace to it), or a limit exceeded.
class ExploreError : public std::runtime_error {
 public:
  explicit ExploreError(const std::string& msg) : std::runtime_error(msg) {}
};

// One global state of the composed system: the participants' states, in
// participant order.
struct SystemConfig {
  std::vector<PartState> parts;

  std::uint64_t hash() const;
  friend bool operator==(const SystemConfig& a, const SystemConfig& b) {
    return a.parts == b.parts;
  }
};

struct Limits {
  std::size_t max_states = 1'000'000;
  std::size_t max_frames = 10'000;
  std::size_t max_transitions = 5'000'000;
};

// The configs vector is kept (configs[i] is the configuration behind LTS
// state i) so callers can sweep state predicates over the explored space.
struct ExploreResult {
  lts::Lts lts;
  std::vector<SystemConfig> configs;
};

// Breadth-first statespace construction. State 0 is the initial (all-quiet)
// configuration; transitions carry rendered action labels ("tau" plus the
// synchronized communication labels). Deterministic: equal inputs produce
// byte-identical exports.
ExploreResult explore(const Composition& comp, const Limits& limits = {});

}  // namespace moolts::env
