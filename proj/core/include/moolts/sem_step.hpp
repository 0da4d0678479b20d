#pragma once

#include <optional>
#include <vector>

#include "moolts/action.hpp"
#include "moolts/sem_state.hpp"

namespace moolts::sem {

// One enabled move of a single process, before composition. Tau moves carry
// the successor directly. Communicating moves carry the payload the partner
// must match; `next` is the emitter's post-handshake state for every kind
// except LoadOut, whose successor needs the received value (resume_load).
struct Move {
  enum class Kind : std::uint8_t { Tau, CallOut, LoadOut, StoreOut, ReturnOut, ThrowOut };

  Kind kind = Kind::Tau;
  scpp::ProcId peer;              // CallOut callee; LoadOut/StoreOut owner
  scpp::FuncId func;              // CallOut/ReturnOut/ThrowOut
  scpp::VarId field;              // LoadOut/StoreOut
  std::vector<scpp::Value> args;  // CallOut
  scpp::Value value;              // StoreOut / ReturnOut
  scpp::Lra lras;                 // CallOut/ReturnOut/ThrowOut
  ProcessState next;
};

// The unique enabled move of a Processing/Throwing process; nullopt when the
// process is Stable or AwaitingReturn (those only react). Throws EngineError
// on defects (unknown function, unmatched jump, evaluation errors).
std::optional<Move> step_process(const ProcDef& def, const ProcessState& ps);

// Blocked-side resumes.
ProcessState resume_load(const ProcessState& ps, const scpp::Value& v);
ProcessState resume_return(const ProcessState& ps, const scpp::Value& v, const scpp::Lra& lras);
ProcessState resume_throw(const ProcessState& ps, const scpp::Lra& lras);

// Stable-side responders.
ProcessState respond_call(const ProcDef& def, const ProcessState& ps, const scpp::FuncId& f,
                          const std::vector<scpp::Value>& vs, const scpp::Lra& lras);
scpp::Value respond_load(const ProcessState& ps, const scpp::VarId& field);
ProcessState respond_store(const ProcessState& ps, const scpp::VarId& field, const scpp::Value& v);

// LRAs for a new frame: each recorded name paired with its current value, with
// values that are themselves local references dereferenced one hop into the
// calling frame's LRAs (so a callee never sees a nested LocalRef).
scpp::Lra frame_lras(const std::vector<scpp::VarId>& refs, const Sigma& sigma_l,
                     const scpp::Lra& caller_refs);

}  // namespace moolts::sem
