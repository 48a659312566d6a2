#pragma once

#include <cstdint>
#include <vector>

#include "sched/generator.hpp"
#include "sched/instance.hpp"

namespace sched::testing {

inline Instance make(int n, const std::vector<std::uint64_t>& times, const std::vector<Edge>& edges = {}) {
  std::vector<ExactCost> t(times.begin(), times.end());
  return Instance(n, std::move(t), edges);
}

inline Instance random_instance(std::uint64_t seed, int n, double density, std::uint64_t tmax = 10,
                                GenModel model = GenModel::kRandomDag) {
  GenParams p;
  p.n = n;
  p.model = model;
  p.density = density;
  p.tmax = tmax;
  p.seed = seed;
  return generate(p);
}

inline Instance chain(int n) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return make(n, std::vector<std::uint64_t>(n, 1), edges);
}

inline Instance antichain(int n) { return make(n, std::vector<std::uint64_t>(n, 1)); }

// Down-sets counted straight from the relation pairs, one subset at a time.
inline std::uint64_t naive_ideal_count(const Instance& inst) {
  const std::vector<Edge> rel = inst.relation();
  std::uint64_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << inst.n()); ++bits) {
    bool closed = true;
    for (auto [u, v] : rel) {
      if ((bits >> v & 1U) && !(bits >> u & 1U)) {
        closed = false;
        break;
      }
    }
    count += closed;
  }
  return count;
}

// Linear extensions counted by appending one job whose predecessors are all placed.
inline std::uint64_t naive_extension_count(const Instance& inst) {
  const int n = inst.n();
  const std::vector<Edge> rel = inst.relation();
  std::vector<std::uint64_t> ways(std::size_t{1} << n, 0);
  ways[0] = 1;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    for (int v = 0; v < n; ++v) {
      if (!(bits >> v & 1U)) continue;
      const std::uint64_t rest = bits & ~(std::uint64_t{1} << v);
      bool addable = true;
      for (auto [a, b] : rel) {
        if (b == v && !(rest >> a & 1U)) addable = false;
      }
      if (addable) ways[bits] += ways[rest];
    }
  }
  return ways[(std::uint64_t{1} << n) - 1];
}

}  // namespace sched::testing
