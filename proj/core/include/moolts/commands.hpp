#pragma once

#include <iosfwd>
#include <string>

namespace moolts::cmd {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;         // success / inputs equivalent
inline constexpr int kExitDifferent = 1;  // compare: inputs not equivalent
inline constexpr int kExitError = 2;      // bad input, configuration, or limit hit

// Each command writes results to `out`, problems to `err`, and returns an
// exit code. Kept stream-parameterized so tests can drive them in-process.

// Prints the lowered model of the project's target class. Methods that fail
// to lower are reported on `err` and make the command fail.
int cmd_transform(const std::string& project_path, std::ostream& out, std::ostream& err);

// Builds the composition, explores it, applies the project's hide/rename
// rules and writes the result to `aut_path`. If `json_path` is non-empty a
// structured dump of the same LTS is written there as well.
int cmd_generate(const std::string& project_path, const std::string& aut_path,
                 const std::string& json_path, std::ostream& out, std::ostream& err);

// Minimizes an imported LTS modulo "strong" or "branching" bisimilarity.
int cmd_reduce(const std::string& in_path, const std::string& relation, bool keep_tau_loops,
               const std::string& out_path, std::ostream& out, std::ostream& err);

// Compares two imported LTSs modulo "strong", "branching" or "weak-trace".
// Weak-trace inequivalence prints a shortest distinguishing trace.
int cmd_compare(const std::string& a_path, const std::string& b_path,
                const std::string& relation, std::ostream& out, std::ostream& err);

// Runs the reference interpreter on a source file plus a call script and
// prints the observable action log, one label per line.
int cmd_oracle(const std::string& source_path, const std::string& script_path, std::ostream& out,
               std::ostream& err);

}  // namespace moolts::cmd
