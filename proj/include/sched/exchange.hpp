#pragma once

#include <vector>

#include "sched/instance.hpp"

namespace sched {

enum class ExchangeMode { kSucc, kPred };

/// Processing times are compared through Instance::cheaper, i.e. by
/// (time, index), so ties are broken by job index throughout this module.

/// Exists u in L such that every w in succ(u) has some v in (K & pred(w)) - L
/// cheaper than u. Throws SchedError(kNotASubset) unless L is a subset of K.
bool is_succ_exchangeable(const Instance& inst, JobSet L, JobSet K);

/// Exists v in K - L such that every w in pred(v) has some u in L & succ(w)
/// more expensive than v. Throws SchedError(kNotASubset) unless L is a subset of K.
bool is_pred_exchangeable(const Instance& inst, JobSet L, JobSet K);

bool is_exchangeable(const Instance& inst, JobSet L, JobSet K, ExchangeMode mode);

/// Cheapest member of (K - Y) & pred(w), over every w with such a member.
JobSet encode_succ(const Instance& inst, JobSet Y, JobSet K);
/// {v in K : some w in succ(v) has every z in Z & pred(w) more expensive than v}
JobSet decode_succ(const Instance& inst, JobSet Z, JobSet K);

/// Most expensive member of Y & succ(w), over every w with such a member.
JobSet encode_pred(const Instance& inst, JobSet Y, JobSet K);
/// {v in K : every w in pred(v) has some z in Z & succ(w) with z = v or z more expensive than v}
JobSet decode_pred(const Instance& inst, JobSet Z, JobSet K);

JobSet encode(const Instance& inst, JobSet Y, JobSet K, ExchangeMode mode);
JobSet decode(const Instance& inst, JobSet Z, JobSet K, ExchangeMode mode);

inline constexpr int kMaxEnumeratedK = 16;

/// Every non-exchangeable L of K, in increasing bit order.
/// Throws SchedError(kSetTooLarge) when |K| > 16.
std::vector<JobSet> enumerate_non_exchangeable(const Instance& inst, JobSet K, ExchangeMode mode);

/// Sum over l = 0..m of C(k, l).
ExactCost non_exchangeable_bound(int k, int m);

}  // namespace sched
