#include <doctest.h>

#include "sched/algorithms.hpp"
#include "sched/branch_solver.hpp"
#include "sched/error.hpp"
#include "sched/oracle.hpp"
#include "sched/structure.hpp"
#include "support.hpp"
#include "trace.hpp"

using namespace sched;
using sched::testing::make;
using sched::testing::random_instance;

namespace {

SolveOptions forced(Strategy s) {
  SolveOptions o;
  o.force = s;
  return o;
}

const Strategy kAllStrategies[] = {Strategy::kDcdp,     Strategy::kHalf,     Strategy::kQuarterA,   Strategy::kQuarterB,
                                   Strategy::kQuarterC, Strategy::kQuarterD, Strategy::kIndependent};

}  // namespace

TEST_CASE("solve on the forced chain") {
  const Instance inst = make(4, {4, 3, 2, 1}, {{0, 1}, {1, 2}, {2, 3}});
  for (Strategy s : kAllStrategies) {
    const SolveResult r = solve(inst, forced(s));
    CHECK(r.cost == ExactCost{30});
    CHECK(r.ordering.sequence() == std::vector<int>{0, 1, 2, 3});
  }
}

TEST_CASE("solve on an antichain is shortest first") {
  const Instance inst = make(4, {1, 2, 3, 4});
  for (Strategy s : kAllStrategies) {
    const SolveResult r = solve(inst, forced(s));
    CHECK(r.cost == ExactCost{20});
    CHECK(r.ordering.sequence() == std::vector<int>{0, 1, 2, 3});
  }
  CHECK(solve(inst).cost == ExactCost{20});
}

TEST_CASE("every forced strategy matches the oracle on random instances") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const double density = std::array{0.0, 0.2, 0.5, 0.9}[seed % 4];
    const Instance inst = random_instance(seed, n, density);
    const AlgoResult oracle = run_algorithm(inst, Algo::kBrute);
    for (Strategy s : kAllStrategies) {
      CAPTURE(seed);
      CAPTURE(to_string(s));
      const SolveResult r = solve(inst, forced(s));
      CHECK(r.cost == oracle.cost);
      CHECK(r.ordering == oracle.ordering);
    }
  }
}

TEST_CASE("epsilon configuration checks") {
  CHECK_NOTHROW(EpsilonConfig::defaults().check());
  const EpsilonConfig forcing{0.2, 0.22, 0.24, 0.26};
  CHECK_THROWS_AS(forcing.check(), SchedError);
  CHECK_NOTHROW(forcing.check_basic());
  CHECK_THROWS_AS((EpsilonConfig{0.3, 0.2, 0.1, 0.0}.check_basic()), SchedError);
  CHECK_THROWS_AS((EpsilonConfig{0.0, 0.1, 0.2, 0.3}.check()), SchedError);
  CHECK_THROWS_AS((EpsilonConfig{-0.1, 0.1, 0.2, 0.3}.check_basic()), SchedError);
  try {
    EpsilonConfig{0.01, 0.01, 0.01, 0.01}.check();
    FAIL("expected InvalidConfig");
  } catch (const SchedError& e) {
    CHECK(e.kind() == ErrorKind::kInvalidConfig);
  }
}

TEST_CASE("strategy names round-trip") {
  for (Strategy s : kAllStrategies) CHECK(parse_strategy(to_string(s)) == s);
  CHECK(std::string(to_string(Strategy::kQuarterC)) == "quarters0-C");
  CHECK_FALSE(parse_strategy("quarters"));
}

TEST_CASE("quarter positions") {
  CHECK(quarter_begin(8, Quarter::kA) == 1);
  CHECK(quarter_end(8, Quarter::kB) == 4);
  CHECK(quarter_begin(12, Quarter::kD) == 10);
  CHECK(quarter_of(12, 9) == Quarter::kC);
  CHECK(quarter_of(12, 10) == Quarter::kD);
}

TEST_CASE("quarter assignment counts") {
  // 0 = begin and 1 = end, related to everything else through the endpoint edges.
  const std::vector<Edge> ends{{0, 1}, {0, 2}, {0, 3}, {2, 1}, {3, 1}};
  const Instance unrelated = make(4, {1, 1, 1, 1}, ends);
  CHECK(enumerate_quarter_assignments(unrelated, {0, 1}, 0, 1).size() == 1);
  CHECK(enumerate_quarter_assignments(unrelated, {0, 1, 2}, 0, 1).size() == 4);

  std::vector<Edge> paired = ends;
  paired.emplace_back(2, 3);
  const Instance pair = make(4, {1, 1, 1, 1}, paired);
  const auto all = enumerate_quarter_assignments(pair, {0, 1, 2, 3}, 0, 1);
  CHECK(all.size() == 10);
  for (const QuarterSets& qs : all) {
    CHECK(qs[0].contains(0));
    CHECK(qs[3].contains(1));
    int q2 = 0;
    int q3 = 0;
    for (int g = 0; g < 4; ++g) {
      if (qs[g].contains(2)) q2 = g;
      if (qs[g].contains(3)) q3 = g;
    }
    CHECK(q2 <= q3);
  }
  CHECK(enumerate_half_assignments(pair, {0, 1, 2, 3}, 0, 1).size() == 3);
}

TEST_CASE("quarter refinements respect capacity") {
  const Instance inst = sched::testing::antichain(8);
  const auto refs = enumerate_quarter_refinements(inst, {0, 1, 2}, {3}, 0, 3);
  // 1 and 2 share A with 0 (at most one more) or go to B: 3 splits.
  CHECK(refs.size() == 3);
  for (const QuarterSets& qs : refs) {
    for (const JobSet& s : qs) CHECK(s.size() <= 2);
  }
}

TEST_CASE("forced half sets") {
  // I1 = {0, 1, 2}; M_AB = {3}, M_CD = {4}.
  const Instance none = make(5, {1, 1, 1, 1, 1});
  CHECK(compute_w_half(none, {0, 1, 2}, {3}, {4}) == std::pair<JobSet, JobSet>{{}, {}});

  const Instance below = make(5, {1, 1, 1, 1, 1}, {{0, 3}, {4, 2}});
  CHECK(compute_w_half(below, {0, 1, 2}, {3}, {4}) == std::pair<JobSet, JobSet>{{0}, {2}});

  const Instance both = make(5, {1, 1, 1, 1, 1}, {{0, 3}, {4, 0}});
  try {
    compute_w_half(both, {0, 1, 2}, {3}, {4});
    FAIL("expected ContradictoryBranch");
  } catch (const SchedError& e) {
    CHECK(e.kind() == ErrorKind::kContradictoryBranch);
  }
}

TEST_CASE("P partitions") {
  BranchContext ctx;
  ctx.n = 8;
  ctx.I1 = {0, 1, 2, 3};
  ctx.M_q = {JobSet{4}, JobSet{5}, JobSet{6}, JobSet{7}};
  compute_p_partitions(sched::testing::antichain(8), ctx);
  CHECK(ctx.P_A == ctx.I1);
  CHECK(ctx.P_D == ctx.I1);
  CHECK(ctx.P_notA.empty());
  CHECK(ctx.P_notD.empty());
  CHECK(ctx.p_A == 1);
  CHECK(ctx.p_D == 1);

  const Instance inst = make(8, std::vector<std::uint64_t>(8, 1), {{5, 0}, {1, 6}});
  compute_p_partitions(inst, ctx);
  CHECK(ctx.P_notA == JobSet{0});
  CHECK(ctx.P_notD == JobSet{1});
  CHECK(ctx.P_A == JobSet{1, 2, 3});
  CHECK(ctx.P_D == JobSet{0, 2, 3});
}

TEST_CASE("half filter") {
  BranchContext ctx;
  ctx.n = 8;
  ctx.M_AB = {0};
  ctx.M_CD = {7};
  ctx.Whalf_AB = {1, 2};
  const SetFilter f = half_filter(ctx, HalfSide::kAB);
  CHECK(f({}));
  CHECK(f({0, 1, 2, 3}));
  CHECK_FALSE(f({0, 1, 3, 4}));
  CHECK_FALSE(f({0, 1, 2, 7}));
  CHECK(f({0, 1, 2, 3, 7}));

  ctx.Whalf_AB = {};
  const SetFilter g = half_filter(ctx, HalfSide::kAB);
  CHECK(g({0, 3, 4, 5}));
  CHECK_FALSE(g({1, 3, 4, 5}));
}

TEST_CASE("the branch agreeing with the optimum is enumerated and never prunes it") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int n = 4 + static_cast<int>(seed % 5);
    const GenModel model = seed % 2 ? GenModel::kRandomDag : GenModel::kAntichainPlusMatching;
    const Instance inst = random_instance(seed, n, 0.25 + 0.1 * static_cast<double>(seed % 5), 10, model);
    const sched::testing::Witness w = sched::testing::find_witness(inst);
    const Instance& base = w.variant.base;
    const BranchContext& ctx = w.ctx;
    CAPTURE(seed);

    bool half_found = false;
    for (const HalfAssignment& ha : enumerate_half_assignments(base, ctx.M, ctx.v_begin, ctx.v_end)) {
      half_found = half_found || (ha.M_AB == ctx.M_AB && ha.M_CD == ctx.M_CD);
    }
    CHECK(half_found);
    bool quarter_found = false;
    for (const QuarterSets& qs : enumerate_quarter_refinements(base, ctx.M_AB | ctx.Whalf_AB, ctx.M_CD | ctx.Whalf_CD,
                                                               ctx.v_begin, ctx.v_end)) {
      bool same = true;
      for (int g = 0; g < 4; ++g) same = same && qs[g] == (ctx.M_q[g] | ctx.Whalf_q[g]);
      quarter_found = quarter_found || same;
    }
    CHECK(quarter_found);

    for (HalfSide side : {HalfSide::kAB, HalfSide::kCD}) {
      CHECK(sched::testing::half_rejections(ctx, side, w.order) == 0);
      const DpOutcome r = solve_half_case(base, ctx, side);
      REQUIRE(r.solution);
      CHECK(r.solution->ordering == w.order);
    }
    for (Quarter q : {Quarter::kA, Quarter::kB, Quarter::kC, Quarter::kD}) {
      CHECK(sched::testing::quarter_rejections(base, ctx, q, w.order) == 0);
      const DpOutcome r = solve_quarter_case(base, ctx, q);
      REQUIRE(r.solution);
      CHECK(r.solution->ordering == w.order);
    }

    QuarterTables tables(base);
    for (Quarter q : {Quarter::kA, Quarter::kB, Quarter::kC, Quarter::kD}) {
      const JobSet S = sched::testing::quarter_jobs(w.order, q);
      REQUIRE(tables.cost(q, S));
      CHECK(tables.sequence(q, S) == sched::testing::quarter_slice(w.order, q));
    }
    const DpOutcome ind = solve_independent_case(base, ctx, tables);
    REQUIRE(ind.solution);
    CHECK(ind.solution->ordering == w.order);
  }
}

TEST_CASE("every branch optimum is at least the global optimum") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Instance inst = random_instance(seed, 7, 0.3);
    const sched::testing::Witness w = sched::testing::find_witness(inst);
    const Instance& base = w.variant.base;
    const BranchContext& opt = w.ctx;
    for (const HalfAssignment& ha : enumerate_half_assignments(base, opt.M, opt.v_begin, opt.v_end)) {
      BranchContext ctx = opt;
      ctx.M_AB = ha.M_AB;
      ctx.M_CD = ha.M_CD;
      try {
        std::tie(ctx.Whalf_AB, ctx.Whalf_CD) = compute_w_half(base, ctx.I1, ha.M_AB, ha.M_CD);
      } catch (const SchedError&) {
        continue;
      }
      for (HalfSide side : {HalfSide::kAB, HalfSide::kCD}) {
        const DpOutcome r = solve_half_case(base, ctx, side);
        if (r.solution) CHECK(r.solution->cost >= w.cost);
      }
    }
  }
}

TEST_CASE("an infeasible quarter-forced guess yields no ordering") {
  // 0 and 7 are the endpoints; job 5 is placed in C and precedes job 1.
  std::vector<Edge> edges{{5, 1}, {0, 7}};
  for (int v = 1; v < 7; ++v) {
    edges.emplace_back(0, v);
    edges.emplace_back(v, 7);
  }
  const Instance inst = make(8, {1, 2, 3, 4, 5, 6, 7, 8}, edges);
  BranchContext ctx;
  ctx.n = 8;
  ctx.v_begin = 0;
  ctx.v_end = 7;
  ctx.M = {0, 5, 7};
  ctx.I1 = {1, 2, 3, 4, 6};
  ctx.M_AB = {0};
  ctx.M_CD = {5, 7};
  ctx.M_q = {JobSet{0}, JobSet{}, JobSet{5}, JobSet{7}};
  std::tie(ctx.Whalf_AB, ctx.Whalf_CD) = compute_w_half(inst, ctx.I1, ctx.M_AB, ctx.M_CD);
  CHECK(ctx.Whalf_CD == JobSet{1});
  ctx.Whalf_q[3] = {1};
  compute_p_partitions(inst, ctx);
  QuarterTables tables(inst);
  ctx.Wq_B = {2, 3};
  ctx.Wq_C = {4};
  const DpOutcome feasible = solve_independent_case(inst, ctx, tables);
  REQUIRE(feasible.solution);
  CHECK(feasible.solution->ordering.sequence() == std::vector<int>{0, 6, 2, 3, 4, 5, 1, 7});
  // Move job 1 from D into the B guess, ahead of its predecessor in C.
  ctx.Whalf_q[3] = {};
  ctx.Wq_B = {1, 2};
  CHECK_FALSE(solve_independent_case(inst, ctx, tables).solution);
}

TEST_CASE("solve report") {
  const Instance inst = random_instance(3, 8, 0.2);
  SolveOptions o = forced(Strategy::kIndependent);
  const SolveResult r = solve(inst, o);
  CHECK(r.report.chosen_path == "independent");
  CHECK(r.report.branches_explored == r.report.branches.size());
  CHECK(r.report.branches_explored > 0);
  o.threads = 4;
  const SolveResult p = solve(inst, o);
  CHECK(p.ordering == r.ordering);
  CHECK(p.report.chosen_path == r.report.chosen_path);
  CHECK(p.report.total == r.report.total);
  CHECK(solve(inst).report.chosen_path == "dcdp");
}
