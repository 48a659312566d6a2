#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sched/branch_solver.hpp"
#include "sched/oracle.hpp"

namespace sched {

enum class Algo { kBrute, kDp, kDcdp, kFull };

std::optional<Algo> parse_algo(std::string_view name);
const char* to_string(Algo algo);

struct AlgoResult {
  /// On the original jobs.
  Ordering ordering;
  /// Unperturbed objective.
  ExactCost cost;
  /// For brute: the number of linear extensions enumerated; for dp: 2^n.
  DpStats stats;
  std::string chosen_path;
  int matching_size = 0;
  std::uint64_t branches_explored = 1;
  double wall_ms = 0;
  std::vector<std::string> diagnostics;
};

/// brute, dp and dcdp run on the perturbed instance so that all four return
/// the same unique optimum; full pads first (see solve()).
AlgoResult run_algorithm(const Instance& inst, Algo algo, const SolveOptions& options = {},
                         int oracle_cap = kDefaultOracleCap);

}  // namespace sched
