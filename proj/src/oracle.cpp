#include "sched/oracle.hpp"

#include "sched/error.hpp"

namespace sched {

namespace {

void check_cap(const Instance& inst, int cap) {
  if (inst.n() > cap) {
    throw SchedError(ErrorKind::kInstanceTooLarge, "instance has " + std::to_string(inst.n()) +
                                                       " jobs, oracle cap is " + std::to_string(cap));
  }
}

// Smallest available job greater than `after`, or -1.
int next_available(const Instance& inst, JobSet placed, int after) {
  for (int v = after + 1; v < inst.n(); ++v) {
    if (!placed.contains(v) && inst.pred(v).subset_of(placed)) return v;
  }
  return -1;
}

}  // namespace

LinearExtensions::LinearExtensions(const Instance& inst, int cap) : inst_(&inst) {
  check_cap(inst, cap);
  sequence_.reserve(inst.n());
}

// Completes sequence_ greedily from its current length.
bool LinearExtensions::advance(std::size_t depth) {
  while (depth < static_cast<std::size_t>(inst_->n())) {
    const int v = next_available(*inst_, placed_, -1);
    if (v < 0) return false;
    sequence_.push_back(v);
    placed_.insert(v);
    ++depth;
  }
  return true;
}

std::optional<Ordering> LinearExtensions::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    advance(0);
    return Ordering::from_sequence(sequence_);
  }
  while (!sequence_.empty()) {
    const int last = sequence_.back();
    sequence_.pop_back();
    placed_.erase(last);
    const int alt = next_available(*inst_, placed_, last);
    if (alt >= 0) {
      sequence_.push_back(alt);
      placed_.insert(alt);
      advance(sequence_.size());
      return Ordering::from_sequence(sequence_);
    }
  }
  done_ = true;
  return std::nullopt;
}

std::vector<Ordering> linear_extensions(const Instance& inst, int cap) {
  LinearExtensions stream(inst, cap);
  std::vector<Ordering> out;
  while (auto o = stream.next()) out.push_back(std::move(*o));
  return out;
}

namespace {

struct Search {
  const Instance& inst;
  std::vector<int> current;
  std::vector<ExactCost> prefix_cost;  // prefix_cost[i] = cost of the first i jobs
  std::optional<ExactCost> best;
  std::vector<int> best_sequence;
  std::uint64_t extensions = 0;

  void run(JobSet placed) {
    const int depth = static_cast<int>(current.size());
    if (depth == inst.n()) {
      ++extensions;
      if (!best || prefix_cost[depth] < *best) {
        best = prefix_cost[depth];
        best_sequence = current;
      }
      return;
    }
    for (int v = 0; v < inst.n(); ++v) {
      if (placed.contains(v) || !inst.pred(v).subset_of(placed)) continue;
      current.push_back(v);
      prefix_cost[depth + 1] = prefix_cost[depth] + job_cost(inst, v, depth + 1);
      run(placed.with(v));
      current.pop_back();
    }
  }
};

}  // namespace

OracleResult brute_force_optimal(const Instance& inst, int cap) {
  check_cap(inst, cap);
  Search search{inst, {}, std::vector<ExactCost>(inst.n() + 1), std::nullopt, {}, 0};
  search.current.reserve(inst.n());
  search.run(JobSet{});
  return OracleResult{Ordering::from_sequence(search.best_sequence), *search.best, search.extensions};
}

}  // namespace sched
