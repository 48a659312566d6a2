#include "sched/structure.hpp"

#include <unordered_map>

#include "sched/error.hpp"

namespace sched {

Graph comparability_graph(const Instance& inst) {
  Graph g(inst.n());
  for (auto [u, v] : inst.relation()) g.add_edge(u, v);
  return g;
}

MatchingResult greedy_maximal_matching(const Graph& graph) {
  MatchingResult out;
  for (int u = 0; u < graph.n; ++u) {
    if (out.M.contains(u)) continue;
    for (int v : graph.adj[u]) {
      if (v <= u || out.M.contains(v)) continue;
      out.pairs.emplace_back(u, v);
      out.M.insert(u);
      out.M.insert(v);
      break;
    }
  }
  out.I1 = JobSet::first(graph.n) - out.M;
  return out;
}

namespace {

// Ideals of the subposet induced on `rest`, splitting on its smallest job x:
// either x is out (so is everything above it) or x is in (so is everything below).
std::uint64_t count_ideals(const Instance& inst, JobSet rest, std::unordered_map<JobSet, std::uint64_t>& memo) {
  if (rest.empty()) return 1;
  if (auto it = memo.find(rest); it != memo.end()) return it->second;
  const int x = rest.front();
  const JobSet up = (inst.succ(x) & rest).with(x);
  const JobSet down = (inst.pred(x) & rest).with(x);
  const std::uint64_t total = count_ideals(inst, rest - up, memo) + count_ideals(inst, rest - down, memo);
  memo.emplace(rest, total);
  return total;
}

}  // namespace

std::uint64_t count_order_ideals(const Instance& inst) {
  if (inst.n() > 24) {
    throw SchedError(ErrorKind::kInstanceTooLarge, "order ideal counting is limited to 24 jobs");
  }
  std::unordered_map<JobSet, std::uint64_t> memo;
  return count_ideals(inst, inst.all(), memo);
}

ExactCost order_ideal_bound(int n, int pairs) {
  return ExactCost::power(2, static_cast<unsigned>(n - 2 * pairs)) * ExactCost::power(3, static_cast<unsigned>(pairs));
}

}  // namespace sched
