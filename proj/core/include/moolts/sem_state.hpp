#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "moolts/ids.hpp"
#include "moolts/stmt.hpp"
#include "moolts/value.hpp"

namespace moolts::sem {

// Exploration-aborting defect: unmatched jump, unknown function, evaluation
// type error. The exploration layer attaches the offending trace.
class EngineError : public std::runtime_error {
 public:
  explicit EngineError(const std::string& msg) : std::runtime_error(msg) {}
};

// Variable environments are total with default VoidType; entries equal to
// VoidType are erased so that structurally equal states compare equal.
using Sigma = std::map<scpp::VarId, scpp::Value>;

const scpp::Value& sigma_get(const Sigma& s, const scpp::VarId& id);
void sigma_set(Sigma& s, const scpp::VarId& id, scpp::Value v);

// ---------------------------------------------------------------------------
// LRA primitives. An Lra is an ordered association list; order and duplicates
// are significant (first match wins on read/update, and the writeback folds
// run right-to-left so on duplicate keys the first entry wins there too).

scpp::Lra make_lras(const std::vector<scpp::VarId>& ids, const Sigma& sigma);

// Throws EngineError("dangling local reference") when id is absent.
const scpp::Value& read_lra(const scpp::VarId& id, const scpp::Lra& l);

// First matching pair replaced; no match leaves l unchanged.
scpp::Lra update_lra(const scpp::VarId& id, const scpp::Value& v, scpp::Lra l);

// For each (id,v): entries whose sigma(id) is itself a reference value are
// skipped (the chase belongs to ret_refs_r); otherwise sigma[id <- v].
Sigma ret_refs_sigma(const scpp::Lra& l, Sigma sigma);

// For each (id,v) with sigma(id) = LocalRef(id'), outer := update_lra(id', v, outer).
scpp::Lra ret_refs_r(const scpp::Lra& l, const Sigma& sigma, scpp::Lra outer);

// ---------------------------------------------------------------------------
// Process states.

struct StackFrame {
  scpp::Program prog;                      // remaining statements
  std::optional<scpp::VarId> result_var;   // destination in the caller; nullopt discards
  Sigma sigma_l;
  scpp::Lra refs;
};

// A process's call stack is its frames vector, top-last; below frames[0]
// sits the external marker naming the function whose acceptance created it.
struct ProcessState {
  enum class Mode : std::uint8_t { Stable, Processing, Throwing, AwaitingReturn };

  scpp::ProcId proc;
  Sigma sigma_g;
  Mode mode = Mode::Stable;

  std::vector<StackFrame> frames;  // top = back(); empty iff Stable
  scpp::FuncId external;           // bottom marker; meaningful unless Stable

  // AwaitingReturn bookkeeping: the pending cross-process call.
  scpp::ProcId await_callee;
  scpp::FuncId await_func;
  std::optional<scpp::VarId> await_result;

  bool is_stable() const { return mode == Mode::Stable; }
  bool is_busy() const { return mode == Mode::Processing || mode == Mode::Throwing; }

  std::uint64_t hash() const;

  friend bool operator==(const ProcessState& a, const ProcessState& b);
  friend bool operator!=(const ProcessState& a, const ProcessState& b) { return !(a == b); }
};

ProcessState initial_state(scpp::ProcId proc, Sigma sigma_g);

// The method tables the engine needs to run one transformed class under one
// process identity.
struct ProcDef {
  scpp::ProcId proc;
  std::map<scpp::FuncId, scpp::Program> get_prog;
  std::map<scpp::FuncId, std::vector<scpp::VarId>> param_names;
};

}  // namespace moolts::sem
