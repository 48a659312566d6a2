#include "sched/subset_dp.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "sched/error.hpp"

namespace sched {

DpStats& DpStats::operator+=(const DpStats& o) {
  states_expanded += o.states_expanded;
  states_rejected += o.states_rejected;
  peak_table_size = std::max(peak_table_size, o.peak_table_size);
  return *this;
}

std::string DpStats::csv_header() { return "states_expanded,states_rejected,peak_table_size"; }

std::string DpStats::csv_row() const {
  return std::to_string(states_expanded) + "," + std::to_string(states_rejected) + "," +
         std::to_string(peak_table_size);
}

JobSet max_elements(const Instance& inst, JobSet X) {
  JobSet out;
  for (int v : X) {
    if (!inst.succ(v).intersects(X)) out.insert(v);
  }
  return out;
}

bool is_downward_closed(const Instance& inst, JobSet X) {
  for (int v : X) {
    if (!inst.pred(v).subset_of(X)) return false;
  }
  return true;
}

namespace {

struct Entry {
  std::optional<ExactCost> cost;  // nullopt: +inf (rejected or no feasible completion)
  int last = -1;
};

// (n - |X| + 1) * t(v) for v placed last in X.
ExactCost last_job_cost(const Instance& inst, int v, int set_size) {
  return inst.time(v) * static_cast<std::uint64_t>(inst.n() - set_size + 1);
}

class PlainDp {
 public:
  PlainDp(const Instance& inst, const SetFilter& filter) : inst_(inst), filter_(filter) {}

  const Entry& eval(JobSet X) {
    if (auto it = memo_.find(X); it != memo_.end()) return it->second;
    Entry entry;
    if (!filter_(X)) {
      ++stats_.states_rejected;
      return store(X, std::move(entry));
    }
    ++stats_.states_expanded;
    if (X.empty()) {
      entry.cost = ExactCost{};
      return store(X, std::move(entry));
    }
    const int size = X.size();
    for (int v : max_elements(inst_, X)) {
      const Entry& sub = eval(X.without(v));
      if (!sub.cost) continue;
      ExactCost candidate = *sub.cost + last_job_cost(inst_, v, size);
      if (!entry.cost || candidate < *entry.cost) {
        entry.cost = std::move(candidate);
        entry.last = v;
      }
    }
    return store(X, std::move(entry));
  }

  DpOutcome finish() {
    DpOutcome out;
    const JobSet all = inst_.all();
    const Entry top = eval(all);
    stats_.peak_table_size = memo_.size();
    out.stats = stats_;
    if (!top.cost) return out;
    std::vector<int> sequence(inst_.n());
    JobSet X = all;
    for (int pos = inst_.n(); pos >= 1; --pos) {
      const int v = memo_.at(X).last;
      sequence[pos - 1] = v;
      X.erase(v);
    }
    out.solution = Solution{Ordering::from_sequence(sequence), *top.cost};
    return out;
  }

 private:
  const Entry& store(JobSet X, Entry entry) { return memo_.emplace(X, std::move(entry)).first->second; }

  const Instance& inst_;
  const SetFilter& filter_;
  std::unordered_map<JobSet, Entry> memo_;
  DpStats stats_;
};

struct PairKey {
  JobSet X;
  JobSet L;
  bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const noexcept {
    const std::uint64_t h = k.X.bits() * 0x9E3779B97F4A7C15ULL ^ (k.L.bits() + 0x632BE59BD9B4E019ULL);
    return std::hash<std::uint64_t>{}(h ^ (h >> 29));
  }
};

class LabeledDp {
 public:
  LabeledDp(const Instance& inst, JobSet domain, const PairFilter& filter, const LabelRule& rule)
      : inst_(inst), domain_(domain & inst.all()), filter_(filter), rule_(rule) {}

  const Entry& eval(JobSet X, JobSet L) {
    const PairKey key{X, L};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Entry entry;
    if (!shape_ok(X, L) || !filter_(X, L)) {
      ++stats_.states_rejected;
      return store(key, std::move(entry));
    }
    ++stats_.states_expanded;
    if (X.empty()) {
      entry.cost = ExactCost{};
      return store(key, std::move(entry));
    }
    const int size = X.size();
    JobSet candidates = max_elements(inst_, X);
    if (rule_.kind == LabelRule::Kind::kPrefix && size > rule_.boundary) candidates -= L;
    for (int v : candidates) {
      const Entry& sub = eval(X.without(v), child_label(X, L, v));
      if (!sub.cost) continue;
      ExactCost candidate = *sub.cost + last_job_cost(inst_, v, size);
      if (!entry.cost || candidate < *entry.cost) {
        entry.cost = std::move(candidate);
        entry.last = v;
      }
    }
    return store(key, std::move(entry));
  }

  DpOutcome finish() {
    const JobSet all = inst_.all();
    std::optional<ExactCost> best;
    JobSet best_label;
    auto try_top = [&](JobSet L) {
      const Entry& e = eval(all, L);
      if (e.cost && (!best || *e.cost < *best)) {
        best = e.cost;
        best_label = L;
      }
    };
    if (rule_.kind == LabelRule::Kind::kSuffix) {
      try_top(JobSet{});
    } else if (rule_.label_size) {
      for_each_subset_of_size(domain_, *rule_.label_size, try_top);
    } else {
      for_each_subset(domain_, try_top);
    }

    DpOutcome out;
    stats_.peak_table_size = memo_.size();
    out.stats = stats_;
    if (!best) return out;
    std::vector<int> sequence(inst_.n());
    JobSet X = all;
    JobSet L = best_label;
    for (int pos = inst_.n(); pos >= 1; --pos) {
      const int v = memo_.at(PairKey{X, L}).last;
      sequence[pos - 1] = v;
      L = child_label(X, L, v);
      X.erase(v);
    }
    out.solution = Solution{Ordering::from_sequence(sequence), *best};
    return out;
  }

 private:
  bool shape_ok(JobSet X, JobSet L) const {
    if (!L.subset_of(domain_)) return false;
    const int size = X.size();
    if (rule_.kind == LabelRule::Kind::kPrefix) {
      if (size <= rule_.boundary) return L == (X & domain_);
      return L.subset_of(X);
    }
    if (size >= rule_.boundary) return L == ((inst_.all() - X) & domain_);
    return !L.intersects(X);
  }

  // Label of the state reached by removing v (placed at position |X|).
  JobSet child_label(JobSet X, JobSet L, int v) const {
    if (rule_.kind == LabelRule::Kind::kPrefix) return X.size() <= rule_.boundary ? L.without(v) : L;
    if (X.size() > rule_.boundary && domain_.contains(v)) return L.with(v);
    return L;
  }

  const Entry& store(const PairKey& key, Entry entry) { return memo_.emplace(key, std::move(entry)).first->second; }

  const Instance& inst_;
  JobSet domain_;
  const PairFilter& filter_;
  LabelRule rule_;
  std::unordered_map<PairKey, Entry, PairKeyHash> memo_;
  DpStats stats_;
};

}  // namespace

DpOutcome run_filtered(const Instance& inst, const SetFilter& filter) {
  PlainDp dp(inst, filter);
  return dp.finish();
}

Solution solve_filtered(const Instance& inst, const SetFilter& filter, DpStats* stats) {
  DpOutcome out = run_filtered(inst, filter);
  if (stats) *stats = out.stats;
  if (!out.solution) throw SchedError(ErrorKind::kInfeasible, "every ordering has a rejected prefix set");
  return std::move(*out.solution);
}

Solution solve_all_subsets(const Instance& inst, DpStats* stats) {
  const int n = inst.n();
  if (n > kMaxAllSubsetsJobs) {
    throw SchedError(ErrorKind::kInstanceTooLarge, "all-subsets DP is limited to " +
                                                       std::to_string(kMaxAllSubsetsJobs) + " jobs");
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<std::optional<ExactCost>> cost(count);
  std::vector<int> last(count, -1);
  cost[0] = ExactCost{};
  for (std::uint64_t bits = 1; bits < count; ++bits) {
    const JobSet X = JobSet::from_bits(bits);
    if (!is_downward_closed(inst, X)) continue;
    for (int v : max_elements(inst, X)) {
      const auto& sub = cost[X.without(v).bits()];
      if (!sub) continue;
      ExactCost candidate = *sub + last_job_cost(inst, v, X.size());
      if (!cost[bits] || candidate < *cost[bits]) {
        cost[bits] = std::move(candidate);
        last[bits] = v;
      }
    }
  }
  if (stats) {
    stats->states_expanded += count;
    stats->peak_table_size = std::max<std::uint64_t>(stats->peak_table_size, count);
  }
  std::vector<int> sequence(n);
  JobSet X = inst.all();
  for (int pos = n; pos >= 1; --pos) {
    sequence[pos - 1] = last[X.bits()];
    X.erase(sequence[pos - 1]);
  }
  return {Ordering::from_sequence(sequence), *cost[inst.all().bits()]};
}

DpOutcome run_filtered_labeled(const Instance& inst, JobSet label_domain, const PairFilter& filter,
                               const LabelRule& rule) {
  LabeledDp dp(inst, label_domain, filter, rule);
  return dp.finish();
}

Solution solve_filtered_labeled(const Instance& inst, JobSet label_domain, const PairFilter& filter,
                                const LabelRule& rule, DpStats* stats) {
  DpOutcome out = run_filtered_labeled(inst, label_domain, filter, rule);
  if (stats) *stats = out.stats;
  if (!out.solution) throw SchedError(ErrorKind::kInfeasible, "every ordering has a rejected (X, L) state");
  return std::move(*out.solution);
}

}  // namespace sched
