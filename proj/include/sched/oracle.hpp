#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sched/instance.hpp"

namespace sched {

inline constexpr int kDefaultOracleCap = 12;

/// Pull-style stream over the linear extensions of an instance, in
/// lexicographic order of the job chosen at each step.
class LinearExtensions {
 public:
  /// Throws SchedError(kInstanceTooLarge) when n exceeds cap.
  explicit LinearExtensions(const Instance& inst, int cap = kDefaultOracleCap);

  /// Next extension, or nullopt once the stream is exhausted.
  std::optional<Ordering> next();

 private:
  bool advance(std::size_t depth);

  const Instance* inst_;
  std::vector<int> sequence_;
  JobSet placed_;
  bool started_ = false;
  bool done_ = false;
};

/// All linear extensions, materialized.
std::vector<Ordering> linear_extensions(const Instance& inst, int cap = kDefaultOracleCap);

struct OracleResult {
  Ordering ordering;
  ExactCost cost;
  std::uint64_t extensions = 0;
};

/// Minimum-cost linear extension by exhaustive enumeration. The first
/// extension in enumeration order wins ties.
OracleResult brute_force_optimal(const Instance& inst, int cap = kDefaultOracleCap);

}  // namespace sched
