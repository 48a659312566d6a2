#pragma once

#include <cstdint>
#include <vector>

#include "sched/instance.hpp"

namespace sched {

/// Undirected graph on jobs 0..n-1 as adjacency bit rows.
struct Graph {
  int n = 0;
  std::vector<JobSet> adj;

  explicit Graph(int n_ = 0) : n(n_), adj(n_) {}
  void add_edge(int u, int v) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  bool has_edge(int u, int v) const { return adj[u].contains(v); }
};

struct MatchingResult {
  std::vector<Edge> pairs;
  /// Endpoints of the pairs.
  JobSet M;
  /// Everything else.
  JobSet I1;
};

/// Edge uv iff u < v or v < u.
Graph comparability_graph(const Instance& inst);

/// Inclusion-maximal matching; edges are scanned by (min endpoint, max endpoint).
MatchingResult greedy_maximal_matching(const Graph& graph);

/// Number of downward-closed subsets. Throws kInstanceTooLarge above 24 jobs.
std::uint64_t count_order_ideals(const Instance& inst);

/// 2^(n - 2 pairs) * 3^pairs.
ExactCost order_ideal_bound(int n, int pairs);

}  // namespace sched
