#include "sched/instance.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sched/error.hpp"

namespace sched {

std::string JobSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int v : *this) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

ExactCost ExactCost::parse(std::string_view digits) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("not a nonnegative integer: '" + std::string(digits) + "'");
  }
  return ExactCost(Value(std::string(digits)));
}

ExactCost ExactCost::power(std::uint64_t base, unsigned exp) {
  return ExactCost(boost::multiprecision::pow(Value(base), exp));
}

bool ExactCost::fits_u64() const { return value_ <= std::numeric_limits<std::uint64_t>::max(); }

std::uint64_t ExactCost::to_u64() const { return value_.convert_to<std::uint64_t>(); }

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCyclicPrecedence: return "CyclicPrecedence";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kPositionOutOfRange: return "PositionOutOfRange";
    case ErrorKind::kNotABijection: return "NotABijection";
    case ErrorKind::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::kInfeasible: return "Infeasible";
    case ErrorKind::kNotASubset: return "NotASubset";
    case ErrorKind::kSetTooLarge: return "SetTooLarge";
    case ErrorKind::kContradictoryBranch: return "ContradictoryBranch";
    case ErrorKind::kInternalInconsistency: return "InternalInconsistency";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kMalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

namespace {

std::string describe_cycle(const std::vector<int>& cycle) {
  std::ostringstream os;
  os << "cyclic precedence: ";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) os << " -> ";
    os << cycle[i];
  }
  return os.str();
}

// Returns one cycle of the directed graph as a closed walk, or empty.
std::vector<int> find_cycle(int n, std::span<const Edge> edges) {
  std::vector<std::vector<int>> out(n);
  for (auto [u, v] : edges) out[u].push_back(v);
  for (auto& list : out) std::sort(list.begin(), list.end());

  enum class Color { kWhite, kGrey, kBlack };
  std::vector<Color> color(n, Color::kWhite);
  std::vector<int> parent(n, -1);
  std::vector<std::size_t> next(n, 0);
  for (int root = 0; root < n; ++root) {
    if (color[root] != Color::kWhite) continue;
    std::vector<int> stack{root};
    color[root] = Color::kGrey;
    while (!stack.empty()) {
      const int u = stack.back();
      if (next[u] == out[u].size()) {
        color[u] = Color::kBlack;
        stack.pop_back();
        continue;
      }
      const int v = out[u][next[u]++];
      if (color[v] == Color::kGrey) {
        std::vector<int> cycle{v};
        for (int w = u; w != v; w = parent[w]) cycle.push_back(w);
        cycle.push_back(v);
        std::reverse(cycle.begin() + 1, cycle.end() - 1);
        return cycle;
      }
      if (color[v] == Color::kWhite) {
        color[v] = Color::kGrey;
        parent[v] = u;
        stack.push_back(v);
      }
    }
  }
  return {};
}

}  // namespace

CyclicPrecedenceError::CyclicPrecedenceError(std::vector<int> cycle)
    : SchedError(ErrorKind::kCyclicPrecedence, describe_cycle(cycle)), cycle_(std::move(cycle)) {}

Instance::Instance(int n, std::vector<ExactCost> times, std::span<const Edge> edges)
    : n_(n), times_(std::move(times)) {
  if (n < 0 || n > kMaxJobs) {
    throw SchedError(ErrorKind::kInstanceTooLarge, "job count " + std::to_string(n) + " outside [0, 64]");
  }
  if (static_cast<int>(times_.size()) != n) {
    throw SchedError(ErrorKind::kIndexOutOfRange, "expected " + std::to_string(n) + " processing times, got " +
                                                      std::to_string(times_.size()));
  }
  succ_.assign(n, JobSet{});
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw SchedError(ErrorKind::kIndexOutOfRange,
                       "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    if (u == v) throw CyclicPrecedenceError({u, u});
    succ_[u].insert(v);
  }
  // Warshall on bit rows.
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (succ_[i].contains(k)) succ_[i] |= succ_[k];
    }
  }
  for (int i = 0; i < n; ++i) {
    if (succ_[i].contains(i)) throw CyclicPrecedenceError(find_cycle(n, edges));
  }
  pred_.assign(n, JobSet{});
  for (int u = 0; u < n; ++u) {
    for (int v : succ_[u]) pred_[v].insert(u);
  }
  build_time_order();
}

void Instance::build_time_order() {
  std::vector<int> order(n_);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return times_[a] < times_[b]; });
  cheaper_.assign(n_, JobSet{});
  JobSet seen;
  for (int v : order) {
    cheaper_[v] = seen;
    seen.insert(v);
  }
}

JobSet Instance::pred_set(JobSet U) const {
  JobSet out;
  for (int v : U) out |= pred_[v];
  return out;
}

JobSet Instance::succ_set(JobSet U) const {
  JobSet out;
  for (int v : U) out |= succ_[v];
  return out;
}

std::vector<Edge> Instance::relation() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    for (int v : succ_[u]) out.emplace_back(u, v);
  }
  return out;
}

Instance Instance::with_times(std::vector<ExactCost> times) const {
  if (static_cast<int>(times.size()) != n_) {
    throw SchedError(ErrorKind::kIndexOutOfRange, "time vector has wrong length");
  }
  Instance copy = *this;
  copy.times_ = std::move(times);
  copy.build_time_order();
  return copy;
}

Instance Instance::with_edges(std::span<const Edge> extra) const {
  std::vector<Edge> edges = relation();
  edges.insert(edges.end(), extra.begin(), extra.end());
  return Instance(n_, times_, edges);
}

Instance transitive_closure(std::span<const Edge> edges, int n) {
  return Instance(n, std::vector<ExactCost>(n < 0 ? 0 : n), edges);
}

Ordering Ordering::from_positions(std::vector<int> positions) {
  const int n = static_cast<int>(positions.size());
  std::vector<bool> used(n + 1, false);
  for (int p : positions) {
    if (p < 1 || p > n || used[p]) throw SchedError(ErrorKind::kNotABijection, "positions are not a bijection onto 1..n");
    used[p] = true;
  }
  Ordering o;
  o.position_ = std::move(positions);
  return o;
}

Ordering Ordering::from_sequence(std::span<const int> sequence) {
  const int n = static_cast<int>(sequence.size());
  std::vector<int> positions(n, 0);
  for (int i = 0; i < n; ++i) {
    const int v = sequence[i];
    if (v < 0 || v >= n || positions[v] != 0) {
      throw SchedError(ErrorKind::kNotABijection, "sequence is not a permutation of 0..n-1");
    }
    positions[v] = i + 1;
  }
  Ordering o;
  o.position_ = std::move(positions);
  return o;
}

std::vector<int> Ordering::sequence() const {
  std::vector<int> seq(position_.size());
  for (std::size_t v = 0; v < position_.size(); ++v) seq[position_[v] - 1] = static_cast<int>(v);
  return seq;
}

JobSet Ordering::prefix(int i) const {
  JobSet out;
  for (std::size_t v = 0; v < position_.size(); ++v) {
    if (position_[v] <= i) out.insert(static_cast<int>(v));
  }
  return out;
}

ExactCost job_cost(const Instance& inst, int v, int i) {
  if (i < 1 || i > inst.n()) {
    throw SchedError(ErrorKind::kPositionOutOfRange,
                     "position " + std::to_string(i) + " outside 1.." + std::to_string(inst.n()));
  }
  return inst.time(v) * static_cast<std::uint64_t>(inst.n() - i + 1);
}

ExactCost ordering_cost(const Instance& inst, const Ordering& order) {
  if (order.size() != inst.n()) {
    throw SchedError(ErrorKind::kNotABijection, "ordering covers " + std::to_string(order.size()) + " jobs, instance has " +
                                                    std::to_string(inst.n()));
  }
  ExactCost total;
  for (int v = 0; v < inst.n(); ++v) total += job_cost(inst, v, order.position(v));
  return total;
}

bool validate_ordering(const Instance& inst, const Ordering& order) {
  if (order.size() != inst.n()) return false;
  for (int u = 0; u < inst.n(); ++u) {
    for (int v : inst.succ(u)) {
      if (order.position(u) >= order.position(v)) return false;
    }
  }
  return true;
}

namespace {

std::vector<ExactCost> perturbed_times(const std::vector<ExactCost>& times, const std::vector<int>& pi) {
  const int n = static_cast<int>(times.size());
  const std::uint64_t base = static_cast<std::uint64_t>(n) + 1;
  const ExactCost scale = ExactCost::power(base, static_cast<unsigned>(n + 2));
  std::vector<ExactCost> out;
  out.reserve(n);
  for (int v = 0; v < n; ++v) {
    out.push_back(times[v] * scale + ExactCost::power(base, static_cast<unsigned>(pi[v] - 1)));
  }
  return out;
}

}  // namespace

Instance perturb(const Instance& inst) {
  std::vector<int> pi(inst.n());
  std::iota(pi.begin(), pi.end(), 1);
  return inst.with_times(perturbed_times(inst.times(), pi));
}

NormalizedInstance normalize(const Instance& inst) {
  const int n0 = inst.n();
  const int n = n0 + (4 - n0 % 4) % 4;
  if (n > kMaxJobs) throw SchedError(ErrorKind::kInstanceTooLarge, "padded instance exceeds 64 jobs");
  std::vector<ExactCost> times = inst.times();
  times.resize(n);
  const std::vector<Edge> edges = inst.relation();

  NormalizedInstance out;
  out.pi.resize(n);
  std::iota(out.pi.begin(), out.pi.end(), 1);
  out.origin.assign(n, -1);
  std::iota(out.origin.begin(), out.origin.begin() + n0, 0);
  out.original_n = n0;
  out.base = Instance(n, perturbed_times(times, out.pi), edges);
  return out;
}

std::vector<NormalizedInstance> endpoint_variants(const NormalizedInstance& norm) {
  const Instance& inst = norm.base;
  std::vector<NormalizedInstance> out;
  for (int b = 0; b < inst.n(); ++b) {
    if (!inst.pred(b).empty()) continue;
    for (int e = 0; e < inst.n(); ++e) {
      if (e == b || !inst.succ(e).empty()) continue;
      std::vector<Edge> extra;
      for (int v = 0; v < inst.n(); ++v) {
        if (v == b || v == e) continue;
        extra.emplace_back(b, v);
        extra.emplace_back(v, e);
      }
      extra.emplace_back(b, e);
      NormalizedInstance variant = norm;
      variant.base = inst.with_edges(extra);
      variant.v_begin = b;
      variant.v_end = e;
      out.push_back(std::move(variant));
    }
  }
  return out;
}

Ordering restrict_to_original(const NormalizedInstance& norm, const Ordering& order) {
  std::vector<int> seq;
  for (int v : order.sequence()) {
    if (norm.origin[v] >= 0) seq.push_back(norm.origin[v]);
  }
  return Ordering::from_sequence(seq);
}

}  // namespace sched
