#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "sched/instance.hpp"

namespace sched {

/// Work counters for one DP invocation (or a sum over several).
struct DpStats {
  /// Distinct accepted memo keys whose recurrence was evaluated.
  std::uint64_t states_expanded = 0;
  /// Distinct keys the filter rejected.
  std::uint64_t states_rejected = 0;
  std::uint64_t peak_table_size = 0;

  DpStats& operator+=(const DpStats& o);
  bool operator==(const DpStats&) const = default;

  static std::string csv_header();
  std::string csv_row() const;
};

struct Solution {
  Ordering ordering;
  ExactCost cost;
};

/// Result of a DP run: the optimum if any ordering survives the filter.
struct DpOutcome {
  std::optional<Solution> solution;
  DpStats stats;
};

/// {v in X : no u in X with v < u}
JobSet max_elements(const Instance& inst, JobSet X);

/// True iff v in X and u < v imply u in X.
bool is_downward_closed(const Instance& inst, JobSet X);

using SetFilter = std::function<bool(JobSet)>;
using PairFilter = std::function<bool(JobSet X, JobSet L)>;

/// Top-down memoized subset DP over prefix sets; rejected sets cost +inf.
/// Equal costs are broken by the smaller last job index.
DpOutcome run_filtered(const Instance& inst, const SetFilter& filter);

/// run_filtered, throwing SchedError(kInfeasible) if nothing survives.
Solution solve_filtered(const Instance& inst, const SetFilter& filter, DpStats* stats = nullptr);

/// Bottom-up over all 2^n subsets with no pruning; sets that are not
/// downward closed cost +inf. Every subset counts as expanded.
/// Throws SchedError(kInstanceTooLarge) above kMaxAllSubsetsJobs jobs.
inline constexpr int kMaxAllSubsetsJobs = 24;
Solution solve_all_subsets(const Instance& inst, DpStats* stats = nullptr);

/// How the label L of a state (X, L) evolves along the recursion.
///
/// kPrefix: L collects the label-domain jobs placed at positions 1..boundary.
///   While |X| <= boundary, L must equal X & domain; above it L is frozen,
///   L is a subset of X, and members of L may not be removed as last job.
///   The top-level call ranges over every L in the domain (or those of
///   size label_size when set).
/// kSuffix: L collects the label-domain jobs placed at positions
///   boundary+1..n. While |X| >= boundary, L must equal (V - X) & domain;
///   below it L is frozen and disjoint from X. The top-level call is (V, {}).
struct LabelRule {
  enum class Kind { kPrefix, kSuffix };
  Kind kind = Kind::kPrefix;
  int boundary = 0;
  std::optional<int> label_size;
};

/// The two-index DP computing the best ordering of X under label L.
DpOutcome run_filtered_labeled(const Instance& inst, JobSet label_domain, const PairFilter& filter,
                               const LabelRule& rule);

/// run_filtered_labeled, throwing SchedError(kInfeasible) if nothing survives.
Solution solve_filtered_labeled(const Instance& inst, JobSet label_domain, const PairFilter& filter,
                                const LabelRule& rule, DpStats* stats = nullptr);

}  // namespace sched
