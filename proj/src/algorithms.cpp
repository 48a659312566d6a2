#include "sched/algorithms.hpp"

#include <chrono>

#include "sched/oracle.hpp"
#include "sched/structure.hpp"

namespace sched {

std::optional<Algo> parse_algo(std::string_view name) {
  for (Algo a : {Algo::kBrute, Algo::kDp, Algo::kDcdp, Algo::kFull}) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

const char* to_string(Algo algo) {
  switch (algo) {
    case Algo::kBrute: return "brute";
    case Algo::kDp: return "dp";
    case Algo::kDcdp: return "dcdp";
    case Algo::kFull: return "full";
  }
  return "unknown";
}

AlgoResult run_algorithm(const Instance& inst, Algo algo, const SolveOptions& options, int oracle_cap) {
  const auto start = std::chrono::steady_clock::now();
  AlgoResult out;
  out.matching_size = static_cast<int>(greedy_maximal_matching(comparability_graph(inst)).pairs.size());
  out.chosen_path = to_string(algo);
  const Instance perturbed = perturb(inst);
  switch (algo) {
    case Algo::kBrute: {
      OracleResult r = brute_force_optimal(perturbed, oracle_cap);
      out.ordering = std::move(r.ordering);
      out.stats.states_expanded = r.extensions;
      break;
    }
    case Algo::kDp: {
      out.ordering = solve_all_subsets(perturbed, &out.stats).ordering;
      break;
    }
    case Algo::kDcdp: {
      Solution s = solve_filtered(perturbed, [&](JobSet X) { return is_downward_closed(perturbed, X); }, &out.stats);
      out.ordering = std::move(s.ordering);
      break;
    }
    case Algo::kFull: {
      SolveResult r = solve(inst, options);
      out.ordering = std::move(r.ordering);
      out.stats = r.report.total;
      out.chosen_path = r.report.chosen_path;
      out.branches_explored = r.report.branches_explored;
      out.diagnostics = std::move(r.report.diagnostics);
      break;
    }
  }
  out.cost = ordering_cost(inst, out.ordering);
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace sched
