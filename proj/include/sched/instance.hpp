#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sched/exact_cost.hpp"
#include "sched/job_set.hpp"

namespace sched {

using Edge = std::pair<int, int>;

/// Jobs with processing times and a transitively closed strict partial
/// order. Immutable once built.
class Instance {
 public:
  Instance() = default;

  /// Builds the instance from raw precedence edges (u, v) meaning u before v.
  /// Throws CyclicPrecedenceError on a cycle and SchedError(kIndexOutOfRange)
  /// on a bad endpoint or when times.size() != n. Duplicate edges are fine.
  Instance(int n, std::vector<ExactCost> times, std::span<const Edge> edges);

  int n() const { return n_; }
  JobSet all() const { return JobSet::first(n_); }
  const ExactCost& time(int v) const { return times_[v]; }
  const std::vector<ExactCost>& times() const { return times_; }

  /// {u : u < v}
  JobSet pred(int v) const { return pred_[v]; }
  /// {u : v < u}
  JobSet succ(int v) const { return succ_[v]; }
  bool precedes(int u, int v) const { return succ_[u].contains(v); }
  bool comparable(int u, int v) const { return precedes(u, v) || precedes(v, u); }

  /// Union of pred(v) over v in U.
  JobSet pred_set(JobSet U) const;
  /// Union of succ(v) over v in U.
  JobSet succ_set(JobSet U) const;

  /// Jobs strictly below v in the total order by (time, index). Used wherever
  /// processing times are compared strictly, so ties never occur.
  JobSet cheaper_than(int v) const { return cheaper_[v]; }
  bool cheaper(int u, int v) const { return cheaper_[v].contains(u); }

  /// Every pair (u, v) with u < v, sorted.
  std::vector<Edge> relation() const;

  /// Same order, new times.
  Instance with_times(std::vector<ExactCost> times) const;
  /// Adds edges and re-closes.
  Instance with_edges(std::span<const Edge> extra) const;

 private:
  void build_time_order();

  int n_ = 0;
  std::vector<ExactCost> times_;
  std::vector<JobSet> pred_;
  std::vector<JobSet> succ_;
  std::vector<JobSet> cheaper_;
};

/// transitive_closure(edges, n) with all-zero processing times.
Instance transitive_closure(std::span<const Edge> edges, int n);

/// A bijection jobs -> positions 1..n.
class Ordering {
 public:
  Ordering() = default;
  /// positions[v] is the 1-based position of job v. Throws kNotABijection.
  static Ordering from_positions(std::vector<int> positions);
  /// sequence[i] is the job at position i+1. Throws kNotABijection.
  static Ordering from_sequence(std::span<const int> sequence);

  int size() const { return static_cast<int>(position_.size()); }
  int position(int v) const { return position_[v]; }
  const std::vector<int>& positions() const { return position_; }
  /// Jobs in schedule order.
  std::vector<int> sequence() const;
  /// Jobs at positions 1..i.
  JobSet prefix(int i) const;

  bool operator==(const Ordering&) const = default;

 private:
  std::vector<int> position_;
};

/// (n - i + 1) * t(v). Throws kPositionOutOfRange unless 1 <= i <= n.
ExactCost job_cost(const Instance& inst, int v, int i);

/// Sum over v of (n - position(v) + 1) * t(v). Precedence is not checked.
/// Throws kNotABijection if the ordering has the wrong size.
ExactCost ordering_cost(const Instance& inst, const Ordering& order);

/// True iff u < v implies position(u) < position(v).
bool validate_ordering(const Instance& inst, const Ordering& order);

/// Instance padded to a multiple of four jobs with perturbed, pairwise
/// distinct processing times.
struct NormalizedInstance {
  Instance base;
  /// pi[v] in 1..n: the job numbering used by the perturbation.
  std::vector<int> pi;
  /// Original index of each job, -1 for padding jobs.
  std::vector<int> origin;
  int original_n = 0;
  std::optional<int> v_begin;
  std::optional<int> v_end;
};

/// t(v) * B^(n+2) + B^(pi(v)-1) with B = n+1, pi(v) = v+1. No padding.
Instance perturb(const Instance& inst);

/// Pads with zero-time unconstrained jobs to a multiple of four, then perturbs.
NormalizedInstance normalize(const Instance& inst);

/// One variant per (v_begin, v_end) with v_begin minimal, v_end maximal and
/// distinct, each with v_begin < v < v_end added for every other v.
std::vector<NormalizedInstance> endpoint_variants(const NormalizedInstance& norm);

/// Drops padding jobs and renumbers positions on the original job indices.
Ordering restrict_to_original(const NormalizedInstance& norm, const Ordering& order);

}  // namespace sched
