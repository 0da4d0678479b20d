#pragma once

#include <string>
#include <vector>

#include "moolts/env_process.hpp"
#include "moolts/interp.hpp"
#include "moolts/lts.hpp"
#include "moolts/moo_ast.hpp"

namespace moolts::testing {

// Absolute path of a file under the repository's test fixture tree.
std::string fixture_path(const std::string& rel);

// Builds the closed composition matching a reference-interpreter script:
// every script instance becomes a transformed participant and the call list
// becomes a scripted (one-shot) top interface. Scripts with globals are not
// representable here — the composed global namespace is a boundary process,
// not an exact store — and are rejected with std::runtime_error.
env::Composition composition_from_script(const moo::TranslationUnit& tu,
                                         const interp::Script& script,
                                         const std::string& filename);

// The visible (non-tau) labels along an LTS that must be a single path from
// its initial state; throws std::runtime_error if any state has out-degree
// greater than one or the walk revisits a state.
std::vector<std::string> path_labels(const lts::Lts& l);

}  // namespace moolts::testing
