#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sched/instance.hpp"
#include "sched/subset_dp.hpp"

namespace sched {

/// The four thresholds steering the strategy ladder.
struct EpsilonConfig {
  double eps1 = 0;
  double eps2 = 0;
  double eps3 = 0;
  double eps4 = 0;

  /// 2.677001953125e-10, 2.724628851234912872314453125e-5,
  /// 7.010121770270753069780766963958740234375e-3,
  /// 1.6526753505895047409353537659626454114913940429688e-2
  static EpsilonConfig defaults();

  /// Each value in (0, 1/4), nondecreasing, and
  ///   2 eps1 < 1/4 + eps3 / 2,
  ///   eps4 > (2 eps1 + 2 eps2 + eps3) / 2,
  ///   2 eps1 + 2 eps2 + eps4 < 1/4.
  /// Throws SchedError(kInvalidConfig) naming the first failed condition.
  void check() const;
  /// Each value in [0, 1] and nondecreasing. Enough for correctness; used
  /// for configurations that force particular strategies.
  void check_basic() const;
};

enum class Strategy { kDcdp, kHalf, kQuarterA, kQuarterB, kQuarterC, kQuarterD, kIndependent };

std::optional<Strategy> parse_strategy(std::string_view name);
const char* to_string(Strategy strategy);

struct SolveOptions {
  EpsilonConfig eps = EpsilonConfig::defaults();
  /// Overrides every threshold test with the given strategy wherever it applies.
  std::optional<Strategy> force;
  /// Largest guessed set of quarter-forced jobs; beyond it the quarter case is used.
  int wquarter_cap = 3;
  /// Worker threads over endpoint variants; results are reduced in variant order.
  int threads = 1;
};

enum class Quarter { kA = 0, kB = 1, kC = 2, kD = 3 };

/// First and last absolute position of quarter q for n divisible by four.
int quarter_begin(int n, Quarter q);
int quarter_end(int n, Quarter q);
Quarter quarter_of(int n, int position);

using QuarterSets = std::array<JobSet, 4>;

/// Everything guessed or derived in one branch.
struct BranchContext {
  int n = 0;
  int v_begin = -1;
  int v_end = -1;
  /// Matching endpoints together with v_begin and v_end.
  JobSet M;
  /// The rest; an antichain.
  JobSet I1;

  JobSet M_AB;
  JobSet M_CD;
  JobSet Whalf_AB;
  JobSet Whalf_CD;

  /// Set once M^AB, M^CD, W_half^AB and W_half^CD are split into quarters.
  QuarterSets M_q;
  QuarterSets Whalf_q;
  JobSet I2;
  JobSet P_A;
  JobSet P_notA;
  JobSet P_notD;
  JobSet P_D;
  int p_A = 0;
  int p_B = 0;
  int p_C = 0;
  int p_D = 0;

  JobSet Wq_B;
  JobSet Wq_C;
};

struct HalfAssignment {
  JobSet M_AB;
  JobSet M_CD;
};

/// Every split of M into halves with v_begin first, v_end second and no
/// u < v placing u in the second half and v in the first.
std::vector<HalfAssignment> enumerate_half_assignments(const Instance& inst, JobSet M, int v_begin, int v_end);

/// Every precedence-respecting map of M into quarters with v_begin in A and v_end in D.
std::vector<QuarterSets> enumerate_quarter_assignments(const Instance& inst, JobSet M, int v_begin, int v_end);

/// Every precedence-respecting split of `ab` into A/B and `cd` into C/D,
/// with each quarter holding at most n/4 jobs. `first` is forced into A and
/// `last` into D (pass -1 for none).
std::vector<QuarterSets> enumerate_quarter_refinements(const Instance& inst, JobSet ab, JobSet cd, int first, int last);

/// (W_half^AB, W_half^CD). Throws SchedError(kContradictoryBranch) when they meet.
std::pair<JobSet, JobSet> compute_w_half(const Instance& inst, JobSet I1, JobSet M_AB, JobSet M_CD);

/// Fills I2, the four P sets, p_A and p_D from M_q and Whalf_q.
void compute_p_partitions(const Instance& inst, BranchContext& ctx);

enum class HalfSide { kAB, kCD };

/// Accepts X when the guessed half is still reachable and M conforms to the halves.
SetFilter half_filter(const BranchContext& ctx, HalfSide side);
DpOutcome solve_half_case(const Instance& inst, const BranchContext& ctx, HalfSide side);

/// The labeled DP for one (quarter, P set) pair: (A, P^A), (B, P^notA), (C, P^notD), (D, P^D).
struct QuarterProgram {
  JobSet domain;
  LabelRule rule;
  PairFilter filter;
};
QuarterProgram quarter_program(const Instance& inst, const BranchContext& ctx, Quarter which);
DpOutcome solve_quarter_case(const Instance& inst, const BranchContext& ctx, Quarter which);

/// Memo tables for the per-quarter DPs of the independent case: for each
/// quarter, the best ordering of a job set placed from the quarter's first
/// position on. Depends only on the instance, so it is shared across branches.
class QuarterTables {
 public:
  explicit QuarterTables(const Instance& inst);

  /// Best cost of scheduling S in positions begin(q) .. begin(q)+|S|-1, or nullopt.
  const std::optional<ExactCost>& cost(Quarter q, JobSet S);
  /// The jobs of S in that best order. Requires cost(q, S) to be set.
  std::vector<int> sequence(Quarter q, JobSet S);
  const DpStats& stats() const { return stats_; }

 private:
  struct Entry {
    std::optional<ExactCost> cost;
    int last = -1;
  };
  const Entry& eval(Quarter q, JobSet S);

  const Instance& inst_;
  std::array<std::unordered_map<JobSet, Entry>, 4> memo_;
  DpStats stats_;
};

/// Assembles the four quarters from the tables given ctx.Wq_B and ctx.Wq_C.
DpOutcome solve_independent_case(const Instance& inst, const BranchContext& ctx, QuarterTables& tables);

/// The branch agreeing with `order` on every guess, for a variant instance
/// with fixed endpoints; `matching` is the set of matching endpoints.
BranchContext consistent_branch(const Instance& inst, JobSet matching, int v_begin, int v_end, const Ordering& order);

struct BranchRecord {
  std::string path;
  DpStats stats;
};

struct SolveReport {
  std::string chosen_path;
  int matching_size = 0;
  std::uint64_t branches_explored = 0;
  DpStats total;
  std::vector<BranchRecord> branches;
  std::vector<std::string> diagnostics;
  double wall_ms = 0;
};

struct SolveResult {
  /// On the original jobs.
  Ordering ordering;
  /// Unperturbed objective on the original times.
  ExactCost cost;
  SolveReport report;
};

/// Exact optimum via the strategy ladder. Throws SchedError(kInternalInconsistency)
/// if any branch produces an invalid ordering or a cost that does not recompute.
SolveResult solve(const Instance& inst, const SolveOptions& options = {});

}  // namespace sched
