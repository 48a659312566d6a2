#include "sched/exchange.hpp"

#include "sched/error.hpp"

namespace sched {

namespace {

void require_subset(JobSet L, JobSet K) {
  if (!L.subset_of(K)) {
    throw SchedError(ErrorKind::kNotASubset, L.to_string() + " is not a subset of " + K.to_string());
  }
}

// True iff some member of S is more expensive than v.
bool has_pricier(const Instance& inst, JobSet S, int v) {
  for (int z : S) {
    if (inst.cheaper(v, z)) return true;
  }
  return false;
}

}  // namespace

bool is_succ_exchangeable(const Instance& inst, JobSet L, JobSet K) {
  require_subset(L, K);
  const JobSet outside = K - L;
  for (int u : L) {
    bool witness = true;
    for (int w : inst.succ(u)) {
      if (!(outside & inst.pred(w)).intersects(inst.cheaper_than(u))) {
        witness = false;
        break;
      }
    }
    if (witness) return true;
  }
  return false;
}

bool is_pred_exchangeable(const Instance& inst, JobSet L, JobSet K) {
  require_subset(L, K);
  for (int v : K - L) {
    bool witness = true;
    for (int w : inst.pred(v)) {
      if (!has_pricier(inst, L & inst.succ(w), v)) {
        witness = false;
        break;
      }
    }
    if (witness) return true;
  }
  return false;
}

bool is_exchangeable(const Instance& inst, JobSet L, JobSet K, ExchangeMode mode) {
  return mode == ExchangeMode::kSucc ? is_succ_exchangeable(inst, L, K) : is_pred_exchangeable(inst, L, K);
}

JobSet encode_succ(const Instance& inst, JobSet Y, JobSet K) {
  JobSet out;
  for (int w : inst.succ_set(K)) {
    const JobSet pool = (K - Y) & inst.pred(w);
    if (pool.empty()) continue;
    int best = pool.front();
    for (int v : pool) {
      if (inst.cheaper(v, best)) best = v;
    }
    out.insert(best);
  }
  return out;
}

JobSet decode_succ(const Instance& inst, JobSet Z, JobSet K) {
  JobSet out;
  for (int v : K) {
    for (int w : inst.succ(v)) {
      if (!(Z & inst.pred(w)).intersects(inst.cheaper_than(v).with(v))) {
        out.insert(v);
        break;
      }
    }
  }
  return out;
}

JobSet encode_pred(const Instance& inst, JobSet Y, JobSet K) {
  JobSet out;
  for (int w : inst.pred_set(K)) {
    const JobSet pool = Y & inst.succ(w);
    if (pool.empty()) continue;
    int best = pool.front();
    for (int v : pool) {
      if (inst.cheaper(best, v)) best = v;
    }
    out.insert(best);
  }
  return out;
}

JobSet decode_pred(const Instance& inst, JobSet Z, JobSet K) {
  JobSet out;
  for (int v : K) {
    bool keep = true;
    for (int w : inst.pred(v)) {
      const JobSet pool = Z & inst.succ(w);
      if (!pool.contains(v) && !has_pricier(inst, pool, v)) {
        keep = false;
        break;
      }
    }
    if (keep) out.insert(v);
  }
  return out;
}

JobSet encode(const Instance& inst, JobSet Y, JobSet K, ExchangeMode mode) {
  return mode == ExchangeMode::kSucc ? encode_succ(inst, Y, K) : encode_pred(inst, Y, K);
}

JobSet decode(const Instance& inst, JobSet Z, JobSet K, ExchangeMode mode) {
  return mode == ExchangeMode::kSucc ? decode_succ(inst, Z, K) : decode_pred(inst, Z, K);
}

std::vector<JobSet> enumerate_non_exchangeable(const Instance& inst, JobSet K, ExchangeMode mode) {
  if (K.size() > kMaxEnumeratedK) {
    throw SchedError(ErrorKind::kSetTooLarge, "K has " + std::to_string(K.size()) + " jobs, limit is 16");
  }
  std::vector<JobSet> out;
  for_each_subset(K, [&](JobSet L) {
    if (!is_exchangeable(inst, L, K, mode)) out.push_back(L);
  });
  return out;
}

ExactCost non_exchangeable_bound(int k, int m) {
  ExactCost total;
  ExactCost binom{1};
  for (int l = 0; l <= m && l <= k; ++l) {
    total += binom;
    binom = ExactCost{binom.value() * (k - l) / (l + 1)};
  }
  return total;
}

}  // namespace sched
