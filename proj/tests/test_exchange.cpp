#include <doctest.h>

#include <random>

#include "sched/error.hpp"
#include "sched/exchange.hpp"
#include "support.hpp"

using namespace sched;
using sched::testing::make;

namespace {

// x = 0, y = 1 share the successor w = 2; t(x) = 2, t(y) = 1.
Instance shared_successor() { return make(3, {2, 1, 5}, {{0, 2}, {1, 2}}); }

// w = 0 precedes x = 1 and y = 2; t(x) = 2, t(y) = 1.
Instance shared_predecessor() { return make(3, {5, 2, 1}, {{0, 1}, {0, 2}}); }

// An antichain K of k jobs and a set of m other jobs, each K job related to
// some of them from below or above. Times are small so ties occur.
struct Bipartite {
  Instance inst;
  JobSet K;
};

Bipartite random_bipartite(std::mt19937_64& rng, int k, int m) {
  std::vector<Edge> edges;
  std::bernoulli_distribution coin(0.35);
  for (int u = 0; u < k; ++u) {
    for (int w = k; w < k + m; ++w) {
      if (!coin(rng)) continue;
      if (coin(rng)) {
        edges.emplace_back(w, u);
      } else {
        edges.emplace_back(u, w);
      }
    }
  }
  std::uniform_int_distribution<std::uint64_t> t(0, 4);
  std::vector<std::uint64_t> times(k + m);
  for (auto& x : times) x = t(rng);
  // Paths through the other jobs may relate two K jobs or close a cycle; retry.
  try {
    Instance inst = make(k + m, times, edges);
    if (!inst.succ_set(JobSet::first(k)).intersects(JobSet::first(k))) return {std::move(inst), JobSet::first(k)};
  } catch (const CyclicPrecedenceError&) {
  }
  return random_bipartite(rng, k, m);
}

}  // namespace

TEST_CASE("succ-exchangeability examples") {
  const Instance inst = shared_successor();
  const JobSet K{0, 1};
  CHECK(is_succ_exchangeable(inst, {0}, K));
  CHECK_FALSE(is_succ_exchangeable(inst, {1}, K));
  CHECK_FALSE(is_succ_exchangeable(inst, {}, K));
  CHECK_FALSE(is_succ_exchangeable(inst, {}, {}));
  try {
    is_succ_exchangeable(inst, {2}, K);
    FAIL("expected NotASubset");
  } catch (const SchedError& e) {
    CHECK(e.kind() == ErrorKind::kNotASubset);
  }
}

TEST_CASE("pred-exchangeability examples") {
  const Instance inst = shared_predecessor();
  const JobSet K{1, 2};
  CHECK_FALSE(is_pred_exchangeable(inst, K, K));
  CHECK(is_pred_exchangeable(inst, {1}, K));
  CHECK_FALSE(is_pred_exchangeable(inst, {2}, K));
  CHECK_THROWS_AS(is_pred_exchangeable(inst, {0}, K), SchedError);
}

TEST_CASE("succ encode and decode examples") {
  const Instance inst = shared_successor();
  const JobSet K{0, 1};
  CHECK(encode_succ(inst, K, K).empty());
  CHECK(encode_succ(inst, {}, K) == JobSet{1});
  CHECK(encode_succ(inst, {1}, K) == JobSet{0});
  CHECK(decode_succ(inst, {}, K) == K);
  CHECK(decode_succ(inst, {0}, K) == JobSet{1});
  CHECK(decode_succ(inst, {1}, K).empty());
}

TEST_CASE("pred encode and decode examples") {
  const Instance inst = shared_predecessor();
  const JobSet K{1, 2};
  CHECK(encode_pred(inst, {}, K).empty());
  CHECK(encode_pred(inst, K, K) == JobSet{1});
  // Both x and y see x as a successor of w at least as expensive as themselves.
  CHECK(decode_pred(inst, {1}, K) == JobSet{1, 2});
  CHECK(decode_pred(inst, K, K) == K);
}

TEST_CASE("enumerate non-exchangeable sets") {
  const Instance inst = shared_successor();
  CHECK(enumerate_non_exchangeable(inst, {0, 1}, ExchangeMode::kSucc) ==
        std::vector<JobSet>{JobSet{}, JobSet{1}, JobSet{0, 1}});
  CHECK(enumerate_non_exchangeable(inst, {}, ExchangeMode::kSucc) == std::vector<JobSet>{JobSet{}});
  CHECK(enumerate_non_exchangeable(inst, {}, ExchangeMode::kPred) == std::vector<JobSet>{JobSet{}});
  CHECK_THROWS_AS(enumerate_non_exchangeable(sched::testing::antichain(17), JobSet::first(17), ExchangeMode::kSucc),
                  SchedError);
}

TEST_CASE("jobs without successors make any set containing them exchangeable") {
  const Instance inst = sched::testing::antichain(3);
  for_each_subset(inst.all(), [&](JobSet L) { CHECK(is_succ_exchangeable(inst, L, inst.all()) == !L.empty()); });
}

TEST_CASE("bound on non-exchangeable sets") {
  CHECK(non_exchangeable_bound(2, 1) == ExactCost{3});
  CHECK(non_exchangeable_bound(5, 0) == ExactCost{1});
  CHECK(non_exchangeable_bound(4, 9) == ExactCost{16});
  CHECK(non_exchangeable_bound(6, 2) == ExactCost{1 + 6 + 15});
}

TEST_CASE("decode(encode(Y)) == Y exactly when Y is non-exchangeable") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 120; ++round) {
    const int k = 1 + round % 10;
    const int m = 1 + round % 4;
    const Bipartite b = random_bipartite(rng, k, m);
    for (ExchangeMode mode : {ExchangeMode::kSucc, ExchangeMode::kPred}) {
      int non_exchangeable = 0;
      for_each_subset(b.K, [&](JobSet Y) {
        const JobSet back = decode(b.inst, encode(b.inst, Y, b.K, mode), b.K, mode);
        const bool exchangeable = is_exchangeable(b.inst, Y, b.K, mode);
        CHECK((back == Y) == !exchangeable);
        if (mode == ExchangeMode::kSucc) {
          CHECK(back.subset_of(Y));
          CHECK_FALSE(encode_succ(b.inst, Y, b.K).intersects(Y));
        } else {
          CHECK(Y.subset_of(back));
          CHECK(encode_pred(b.inst, Y, b.K).subset_of(Y));
        }
        non_exchangeable += !exchangeable;
      });
      const int rel = (mode == ExchangeMode::kSucc ? b.inst.succ_set(b.K) : b.inst.pred_set(b.K)).size();
      CHECK(ExactCost{static_cast<std::uint64_t>(non_exchangeable)} <= non_exchangeable_bound(k, rel));
    }
  }
}
