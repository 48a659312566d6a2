#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sched {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitMalformed = 1,
  kExitInfeasible = 2,
  kExitInvalidOrder = 3,
  kExitBoundViolated = 4,
  kExitCostMismatch = 5,
};

inline constexpr const char* kBenchHeader = "instance,n,matching_size,algo,cost,states_expanded,wall_ms,chosen_path";

/// Runs one subcommand (solve, verify, gen, count, bench). `args` excludes
/// the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sched
