#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "moolts/env_bounds.hpp"
#include "moolts/ids.hpp"
#include "moolts/sem_state.hpp"
#include "moolts/value.hpp"

namespace moolts::env {

// ---------------------------------------------------------------------------
// Boundary-process specifications.

// Stateless over-approximation of a class interface: every call is answered
// with each value of the method's return bound (plus a throw branch when
// configured), loads with each value of the field's load bound; stores are
// absorbed.
struct StubSpec {
  scpp::ProcId proc;
  std::map<scpp::FuncId, BoundedType> return_bounds;
  std::map<scpp::FuncId, bool> can_throw;           // default false
  std::map<scpp::VarId, BoundedType> load_bounds;
};

// Handwritten bottom process: transitions match incoming offers and carry the
// full response. An offer with no matching transition blocks the caller.
struct FsmTransition {
  enum class Trigger : std::uint8_t { Call, Load, Store };

  Trigger trigger = Trigger::Call;
  std::string from;
  std::string to;
  scpp::FuncId func;                              // Call
  std::optional<std::vector<scpp::Value>> args;   // Call: exact match when set
  scpp::VarId field;                              // Load / Store
  std::optional<scpp::Value> value;               // Load: value served; Store: match when set
  bool throws = false;                            // Call response
  scpp::Value return_value;                       // Call response when !throws
};

struct CustomFsm {
  scpp::ProcId proc;
  std::vector<std::string> states;
  std::string initial;
  std::vector<FsmTransition> transitions;
};

// Driver process invoking the subject's visible interface with bounded
// arguments. Offers are precomputed at composition build time.
struct TopFuncSpec {
  scpp::FuncId func;
  std::vector<BoundedType> arg_bounds;
  bool throws_terminates = false;
};

struct TopFieldSpec {
  scpp::VarId field;
  bool loadable = true;
  std::optional<BoundedType> store_bound;
};

// One fixed call of a scripted driver.
struct TopScriptCall {
  scpp::FuncId func;
  std::vector<scpp::Value> args;
};

// Either a reactive driver (funcs/fields, re-offered forever) or a scripted
// one (the fixed call sequence runs once, then the driver halts; a throw
// advances to the next call, matching the oracle interpreter).
struct TopInterfaceSpec {
  scpp::ProcId target;
  std::vector<TopFuncSpec> funcs;
  std::vector<TopFieldSpec> fields;
  std::vector<TopScriptCall> sequence;  // non-empty selects scripted mode

  bool scripted() const { return !sequence.empty(); }
};

// One precomputed call offer: argument values with by-reference positions
// replaced by synthetic LRAs seeded from the enumerated value.
struct TopCallOffer {
  scpp::FuncId func;
  std::vector<scpp::Value> args;
  scpp::Lra lras;
  bool throws_terminates = false;
};

// ---------------------------------------------------------------------------
// Per-kind dynamic states.

struct StubState {
  bool busy = false;
  scpp::FuncId func;  // pending call
  scpp::Lra lras;

  friend bool operator==(const StubState& a, const StubState& b) {
    return a.busy == b.busy && a.func == b.func && a.lras == b.lras;
  }
};

struct FsmState {
  std::string node;
  bool pending = false;     // call accepted, response not yet emitted
  std::string next_node;    // where the response lands
  bool pending_throw = false;
  scpp::Value value;        // return value when !pending_throw
  scpp::FuncId func;
  scpp::Lra lras;

  friend bool operator==(const FsmState& a, const FsmState& b) {
    return a.node == b.node && a.pending == b.pending && a.next_node == b.next_node &&
           a.pending_throw == b.pending_throw && a.value == b.value && a.func == b.func &&
           a.lras == b.lras;
  }
};

struct TopState {
  enum class Phase : std::uint8_t { Idle, Awaiting, Halted };
  Phase phase = Phase::Idle;
  scpp::FuncId func;  // pending call when Awaiting
  bool throws_terminates = false;
  std::uint32_t step = 0;  // scripted mode: next sequence position

  friend bool operator==(const TopState& a, const TopState& b) {
    return a.phase == b.phase && a.func == b.func &&
           a.throws_terminates == b.throws_terminates && a.step == b.step;
  }
};

using PartState = std::variant<sem::ProcessState, StubState, FsmState, TopState>;

std::uint64_t part_hash(const PartState& s);

// ---------------------------------------------------------------------------
// Composition.

struct Participant {
  enum class Kind : std::uint8_t { Transformed, Stub, Fsm, Top };

  Kind kind = Kind::Transformed;
  scpp::ProcId proc;

  // Transformed
  sem::ProcDef def;
  sem::Sigma initial_sigma_g;

  // Stub
  StubSpec stub;

  // Fsm
  CustomFsm fsm;

  // Top
  TopInterfaceSpec top;
  std::vector<TopCallOffer> top_offers;  // precomputed, canonical order
};

struct Composition {
  std::vector<Participant> parts;  // the top interface is parts.back()
  Categories categories;
};

PartState initial_part_state(const Participant& p);

// Stub/FSM matching helpers used by the exploration layer.
StubState stub_accept_call(const StubSpec& spec, const scpp::FuncId& f, const scpp::Lra& lras);
std::vector<const FsmTransition*> fsm_match_call(const CustomFsm& fsm, const std::string& node,
                                                 const scpp::FuncId& f,
                                                 const std::vector<scpp::Value>& vs);
std::vector<const FsmTransition*> fsm_match_load(const CustomFsm& fsm, const std::string& node,
                                                 const scpp::VarId& field);
std::vector<const FsmTransition*> fsm_match_store(const CustomFsm& fsm, const std::string& node,
                                                  const scpp::VarId& field,
                                                  const scpp::Value& v);

// Structural sanity checks, run at composition build time. Throw ConfigError.
void validate_fsm(const CustomFsm& fsm);
void validate_stub(const StubSpec& spec);

// Precomputes the call offers of a top interface: the cross product of the
// argument bounds per visible function, with by-reference positions turned
// into synthetic "__top<i>" LRAs.
std::vector<TopCallOffer> build_top_offers(const TopInterfaceSpec& spec,
                                           const std::map<scpp::FuncId, std::vector<bool>>& by_ref,
                                           const Categories& categories);

}  // namespace moolts::env
