#include <doctest.h>

#include <set>

#include "sched/error.hpp"
#include "sched/oracle.hpp"
#include "support.hpp"

using namespace sched;
using sched::testing::make;

TEST_CASE("linear extension counts") {
  CHECK(linear_extensions(make(3, {1, 1, 1})).size() == 6);
  CHECK(linear_extensions(make(3, {1, 1, 1}, {{0, 1}, {1, 2}})).size() == 1);
  CHECK(linear_extensions(make(3, {1, 1, 1}, {{0, 1}})).size() == 3);
  CHECK(linear_extensions(make(0, {})).size() == 1);
}

TEST_CASE("extensions are valid, distinct and in lexicographic order") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = sched::testing::random_instance(seed, 2 + static_cast<int>(seed % 7), 0.25);
    const std::vector<Ordering> all = linear_extensions(inst);
    std::set<std::vector<int>> seen;
    std::vector<int> previous;
    for (const Ordering& o : all) {
      CHECK(validate_ordering(inst, o));
      const std::vector<int> seq = o.sequence();
      CHECK(seen.insert(seq).second);
      CHECK(previous < seq);
      previous = seq;
    }
    CHECK(all.size() == sched::testing::naive_extension_count(inst));
  }
}

TEST_CASE("brute force optimum") {
  OracleResult r = brute_force_optimal(make(3, {1, 2, 3}));
  CHECK(r.ordering.sequence() == std::vector<int>{0, 1, 2});
  CHECK(r.cost == ExactCost{10});

  r = brute_force_optimal(make(2, {5, 1}, {{0, 1}}));
  CHECK(r.ordering.positions() == std::vector<int>{1, 2});
  CHECK(r.cost == ExactCost{11});

  r = brute_force_optimal(make(2, {2, 1}));
  CHECK(r.ordering.sequence() == std::vector<int>{1, 0});
  CHECK(r.cost == ExactCost{4});
}

TEST_CASE("brute force equals the minimum over all extensions") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = sched::testing::random_instance(seed, 2 + static_cast<int>(seed % 6), 0.3);
    const OracleResult r = brute_force_optimal(inst);
    ExactCost best = ordering_cost(inst, linear_extensions(inst).front());
    for (const Ordering& o : linear_extensions(inst)) best = std::min(best, ordering_cost(inst, o));
    CHECK(r.cost == best);
    CHECK(ordering_cost(inst, r.ordering) == r.cost);
  }
}

TEST_CASE("oracle cap") {
  const Instance big = sched::testing::antichain(13);
  CHECK_THROWS_AS(brute_force_optimal(big), SchedError);
  CHECK_THROWS_AS(LinearExtensions{big}, SchedError);
  CHECK_NOTHROW(LinearExtensions(big, 13).next());
}
