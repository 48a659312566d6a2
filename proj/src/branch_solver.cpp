#include "sched/branch_solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>
#include <tuple>

#include "sched/error.hpp"
#include "sched/exchange.hpp"
#include "sched/structure.hpp"

namespace sched {

EpsilonConfig EpsilonConfig::defaults() {
  return {2.677001953125e-10, 0.00002724628851234912872314453125, 0.007010121770270753069780766963958740234375,
          0.016526753505895047409353537659626454114913940429688};
}

namespace {

[[noreturn]] void invalid_config(const std::string& what) { throw SchedError(ErrorKind::kInvalidConfig, what); }

}  // namespace

void EpsilonConfig::check_basic() const {
  const double v[] = {eps1, eps2, eps3, eps4};
  for (int k = 0; k < 4; ++k) {
    if (!(v[k] >= 0.0 && v[k] <= 1.0)) invalid_config("eps" + std::to_string(k + 1) + " must lie in [0, 1]");
    if (k > 0 && v[k] < v[k - 1]) invalid_config("epsilons must be nondecreasing");
  }
}

void EpsilonConfig::check() const {
  check_basic();
  const double v[] = {eps1, eps2, eps3, eps4};
  for (int k = 0; k < 4; ++k) {
    if (!(v[k] > 0.0 && v[k] < 0.25)) invalid_config("eps" + std::to_string(k + 1) + " must lie in (0, 1/4)");
  }
  if (!(2 * eps1 < 0.25 + eps3 / 2)) invalid_config("requires 2 eps1 < 1/4 + eps3/2");
  if (!(eps4 > (2 * eps1 + 2 * eps2 + eps3) / 2)) invalid_config("requires eps4 > (2 eps1 + 2 eps2 + eps3)/2");
  if (!(2 * eps1 + 2 * eps2 + eps4 < 0.25)) invalid_config("requires 2 eps1 + 2 eps2 + eps4 < 1/4");
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::kDcdp, Strategy::kHalf, Strategy::kQuarterA, Strategy::kQuarterB, Strategy::kQuarterC,
                     Strategy::kQuarterD, Strategy::kIndependent}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

const char* to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kDcdp: return "dcdp";
    case Strategy::kHalf: return "half";
    case Strategy::kQuarterA: return "quarters0-A";
    case Strategy::kQuarterB: return "quarters0-B";
    case Strategy::kQuarterC: return "quarters0-C";
    case Strategy::kQuarterD: return "quarters0-D";
    case Strategy::kIndependent: return "independent";
  }
  return "unknown";
}

int quarter_begin(int n, Quarter q) { return static_cast<int>(q) * (n / 4) + 1; }
int quarter_end(int n, Quarter q) { return (static_cast<int>(q) + 1) * (n / 4); }
Quarter quarter_of(int n, int position) { return static_cast<Quarter>((position - 1) / (n / 4)); }

namespace {

constexpr Quarter kQuarters[] = {Quarter::kA, Quarter::kB, Quarter::kC, Quarter::kD};

int idx(Quarter q) { return static_cast<int>(q); }

Strategy quarter_strategy(Quarter q) { return static_cast<Strategy>(static_cast<int>(Strategy::kQuarterA) + idx(q)); }

// Backtracking over jobs in index order; allowed[v] is a bit mask of quarters.
class QuarterEnumerator {
 public:
  QuarterEnumerator(const Instance& inst, std::vector<int> jobs, std::vector<unsigned> allowed, bool capacity)
      : inst_(inst), jobs_(std::move(jobs)), allowed_(std::move(allowed)), capacity_(capacity) {}

  std::vector<QuarterSets> run() {
    assigned_.assign(inst_.n(), -1);
    recurse(0);
    return std::move(out_);
  }

 private:
  bool fits(int v, int q) const {
    for (int u : inst_.pred(v)) {
      if (assigned_[u] > q) return false;
    }
    for (int u : inst_.succ(v)) {
      if (assigned_[u] >= 0 && assigned_[u] < q) return false;
    }
    if (!capacity_) return true;
    const int n = inst_.n();
    const Quarter quarter = static_cast<Quarter>(q);
    if (current_[q].size() >= n / 4) return false;
    return inst_.pred(v).size() < quarter_end(n, quarter) && inst_.succ(v).size() <= n - quarter_begin(n, quarter);
  }

  void recurse(std::size_t k) {
    if (k == jobs_.size()) {
      out_.push_back(current_);
      return;
    }
    const int v = jobs_[k];
    for (int q = 0; q < 4; ++q) {
      if (!((allowed_[k] >> q) & 1U) || !fits(v, q)) continue;
      assigned_[v] = q;
      current_[q].insert(v);
      recurse(k + 1);
      current_[q].erase(v);
      assigned_[v] = -1;
    }
  }

  const Instance& inst_;
  std::vector<int> jobs_;
  std::vector<unsigned> allowed_;
  bool capacity_;
  std::vector<int> assigned_;
  QuarterSets current_{};
  std::vector<QuarterSets> out_;
};

constexpr unsigned kMaskA = 1U;
constexpr unsigned kMaskD = 8U;
constexpr unsigned kMaskAB = 3U;
constexpr unsigned kMaskCD = 12U;

}  // namespace

std::vector<HalfAssignment> enumerate_half_assignments(const Instance& inst, JobSet M, int v_begin, int v_end) {
  std::vector<int> jobs;
  std::vector<unsigned> allowed;
  for (int v : M) {
    jobs.push_back(v);
    allowed.push_back(v == v_begin ? kMaskA : v == v_end ? kMaskD : kMaskA | kMaskD);
  }
  std::vector<HalfAssignment> out;
  for (const QuarterSets& qs : QuarterEnumerator(inst, jobs, allowed, false).run()) {
    out.push_back({qs[0], qs[3]});
  }
  return out;
}

std::vector<QuarterSets> enumerate_quarter_assignments(const Instance& inst, JobSet M, int v_begin, int v_end) {
  std::vector<int> jobs;
  std::vector<unsigned> allowed;
  for (int v : M) {
    jobs.push_back(v);
    allowed.push_back(v == v_begin ? kMaskA : v == v_end ? kMaskD : 15U);
  }
  return QuarterEnumerator(inst, jobs, allowed, false).run();
}

std::vector<QuarterSets> enumerate_quarter_refinements(const Instance& inst, JobSet ab, JobSet cd, int first,
                                                       int last) {
  std::vector<int> jobs;
  std::vector<unsigned> allowed;
  for (int v : ab | cd) {
    jobs.push_back(v);
    allowed.push_back(v == first ? kMaskA : v == last ? kMaskD : ab.contains(v) ? kMaskAB : kMaskCD);
  }
  return QuarterEnumerator(inst, jobs, allowed, true).run();
}

std::pair<JobSet, JobSet> compute_w_half(const Instance& inst, JobSet I1, JobSet M_AB, JobSet M_CD) {
  JobSet ab;
  JobSet cd;
  for (int v : I1) {
    if (inst.succ(v).intersects(M_AB)) ab.insert(v);
    if (inst.pred(v).intersects(M_CD)) cd.insert(v);
  }
  if (ab.intersects(cd)) {
    throw SchedError(ErrorKind::kContradictoryBranch, "jobs " + (ab & cd).to_string() + " are forced into both halves");
  }
  return {ab, cd};
}

void compute_p_partitions(const Instance& inst, BranchContext& ctx) {
  ctx.I2 = ctx.I1 - ctx.Whalf_AB - ctx.Whalf_CD;
  ctx.P_notA = JobSet{};
  ctx.P_notD = JobSet{};
  for (int v : ctx.I2) {
    if (inst.pred(v).intersects(ctx.M_q[idx(Quarter::kB)])) ctx.P_notA.insert(v);
    if (inst.succ(v).intersects(ctx.M_q[idx(Quarter::kC)])) ctx.P_notD.insert(v);
  }
  ctx.P_A = ctx.I2 - ctx.P_notA;
  ctx.P_D = ctx.I2 - ctx.P_notD;
  const int n4 = ctx.n / 4;
  ctx.p_A = n4 - (ctx.M_q[idx(Quarter::kA)] | ctx.Whalf_q[idx(Quarter::kA)]).size();
  ctx.p_D = n4 - (ctx.M_q[idx(Quarter::kD)] | ctx.Whalf_q[idx(Quarter::kD)]).size();
}

SetFilter half_filter(const BranchContext& ctx, HalfSide side) {
  const int half = ctx.n / 2;
  const JobSet M_AB = ctx.M_AB;
  const JobSet M_CD = ctx.M_CD;
  const JobSet W = side == HalfSide::kAB ? ctx.Whalf_AB : ctx.Whalf_CD;
  return [=](JobSet X) {
    const int s = X.size();
    if (s <= half && X.intersects(M_CD)) return false;
    if (s >= half && !M_AB.subset_of(X)) return false;
    if (side == HalfSide::kAB) return (W - X).size() <= std::max(0, half - s);
    return (W & X).size() <= std::max(0, s - half);
  };
}

DpOutcome solve_half_case(const Instance& inst, const BranchContext& ctx, HalfSide side) {
  return run_filtered(inst, half_filter(ctx, side));
}

QuarterProgram quarter_program(const Instance& inst, const BranchContext& ctx, Quarter which) {
  const int n = ctx.n;
  const int n4 = n / 4;
  std::array<JobSet, 4> fixed;
  std::array<int, 4> lo{};
  std::array<int, 4> hi{};
  for (Quarter q : kQuarters) {
    fixed[idx(q)] = ctx.M_q[idx(q)] | ctx.Whalf_q[idx(q)];
    lo[idx(q)] = quarter_begin(n, q);
    hi[idx(q)] = quarter_end(n, q);
  }
  auto conforms = [=](JobSet X) {
    const int s = X.size();
    for (int g = 0; g < 4; ++g) {
      if (s >= hi[g] && !fixed[g].subset_of(X)) return false;
      if (s < lo[g] && fixed[g].intersects(X)) return false;
    }
    return true;
  };
  const Instance* in = &inst;

  QuarterProgram prog;
  switch (which) {
    case Quarter::kA: {
      const JobSet P = ctx.P_A;
      const int p = ctx.p_A;
      prog.domain = P;
      prog.rule = {LabelRule::Kind::kPrefix, n4, p};
      prog.filter = [=](JobSet X, JobSet L) {
        if (!conforms(X)) return false;
        if (X.size() <= n4) return L.size() <= p;
        const JobSet K = P - L;
        return L.size() == p && !is_succ_exchangeable(*in, X & K, K);
      };
      break;
    }
    case Quarter::kB: {
      const JobSet P = ctx.P_notA;
      const int p = ctx.p_B;
      prog.domain = P;
      prog.rule = {LabelRule::Kind::kPrefix, 2 * n4, p};
      prog.filter = [=](JobSet X, JobSet L) {
        if (!conforms(X)) return false;
        const int s = X.size();
        if (s <= n4) return L.empty();
        if (s <= 2 * n4) return L.size() <= p;
        const JobSet K = P - L;
        return L.size() == p && !is_succ_exchangeable(*in, X & K, K);
      };
      break;
    }
    case Quarter::kC: {
      const JobSet P = ctx.P_notD;
      const int p = ctx.p_C;
      prog.domain = P;
      prog.rule = {LabelRule::Kind::kSuffix, 2 * n4, std::nullopt};
      prog.filter = [=](JobSet X, JobSet L) {
        if (!conforms(X)) return false;
        const int s = X.size();
        if (s >= 3 * n4) return L.empty();
        if (s >= 2 * n4) return L.size() <= p;
        const JobSet K = P - L;
        return L.size() == p && !is_pred_exchangeable(*in, X & K, K);
      };
      break;
    }
    case Quarter::kD: {
      const JobSet P = ctx.P_D;
      const int p = ctx.p_D;
      prog.domain = P;
      prog.rule = {LabelRule::Kind::kSuffix, 3 * n4, std::nullopt};
      prog.filter = [=](JobSet X, JobSet L) {
        if (!conforms(X)) return false;
        if (X.size() >= 3 * n4) return L.size() <= p;
        const JobSet K = P - L;
        return L.size() == p && !is_pred_exchangeable(*in, X & K, K);
      };
      break;
    }
  }
  return prog;
}

DpOutcome solve_quarter_case(const Instance& inst, const BranchContext& ctx, Quarter which) {
  const QuarterProgram prog = quarter_program(inst, ctx, which);
  return run_filtered_labeled(inst, prog.domain, prog.filter, prog.rule);
}

QuarterTables::QuarterTables(const Instance& inst) : inst_(inst) {}

const QuarterTables::Entry& QuarterTables::eval(Quarter q, JobSet S) {
  auto& memo = memo_[idx(q)];
  if (auto it = memo.find(S); it != memo.end()) return it->second;
  ++stats_.states_expanded;
  Entry entry;
  const int position = quarter_begin(inst_.n(), q) - 1 + S.size();
  if (S.empty()) {
    entry.cost = ExactCost{};
  } else if (position <= inst_.n()) {
    for (int v : max_elements(inst_, S)) {
      const Entry& sub = eval(q, S.without(v));
      if (!sub.cost) continue;
      ExactCost candidate = *sub.cost + job_cost(inst_, v, position);
      if (!entry.cost || candidate < *entry.cost) {
        entry.cost = std::move(candidate);
        entry.last = v;
      }
    }
  }
  const Entry& stored = memo.emplace(S, std::move(entry)).first->second;
  stats_.peak_table_size = std::max<std::uint64_t>(stats_.peak_table_size, memo.size());
  return stored;
}

const std::optional<ExactCost>& QuarterTables::cost(Quarter q, JobSet S) { return eval(q, S).cost; }

std::vector<int> QuarterTables::sequence(Quarter q, JobSet S) {
  std::vector<int> out(S.size());
  for (int k = S.size(); k >= 1; --k) {
    const int v = eval(q, S).last;
    out[k - 1] = v;
    S.erase(v);
  }
  return out;
}

DpOutcome solve_independent_case(const Instance& inst, const BranchContext& ctx, QuarterTables& tables) {
  const int n4 = ctx.n / 4;
  const JobSet Wq = ctx.Wq_B | ctx.Wq_C;
  const DpStats before = tables.stats();

  std::array<JobSet, 4> W;
  for (Quarter q : kQuarters) W[idx(q)] = ctx.M_q[idx(q)] | ctx.Whalf_q[idx(q)];
  W[idx(Quarter::kB)] |= ctx.Wq_B;
  W[idx(Quarter::kC)] |= ctx.Wq_C;
  std::array<int, 4> q_size{};
  for (int g = 0; g < 4; ++g) q_size[g] = n4 - W[g].size();

  DpOutcome out;
  if (std::any_of(q_size.begin(), q_size.end(), [](int s) { return s < 0; })) return out;
  // No fixed job may precede a job fixed in an earlier quarter.
  for (int g = 1; g < 4; ++g) {
    for (int h = g; h < 4; ++h) {
      if (inst.succ_set(W[h]).intersects(W[g - 1])) return out;
    }
  }

  const JobSet QA = ctx.P_A - Wq;
  const JobSet QnA = ctx.P_notA - Wq;
  const JobSet QnD = ctx.P_notD - Wq;
  const JobSet QD = ctx.P_D - Wq;
  const JobSet I_AC = QA & QnD;
  const JobSet I_AD = QA & QD;
  const JobSet I_BC = QnA & QnD;
  const JobSet I_BD = QnA & QD;

  auto part = [&](Quarter q, JobSet Y) -> std::optional<ExactCost> {
    if (Y.size() != q_size[idx(q)]) return std::nullopt;
    return tables.cost(q, W[idx(q)] | Y);
  };

  struct Pick {
    std::optional<ExactCost> cost;
    std::array<JobSet, 4> Y{};
  };
  // Best split of `shared` between quarter x (keeping Y) and quarter y,
  // with fixed_x and fixed_y already placed in x and y respectively.
  auto best_pair = [&](Quarter x, Quarter y, JobSet shared, JobSet fixed_x, JobSet fixed_y) {
    Pick best;
    const int need = q_size[idx(x)] - fixed_x.size();
    for_each_subset_of_size(shared, need, [&](JobSet Y) {
      const auto cx = part(x, fixed_x | Y);
      if (!cx) return;
      const auto cy = part(y, fixed_y | (shared - Y));
      if (!cy) return;
      ExactCost total = *cx + *cy;
      if (!best.cost || total < *best.cost) {
        best.cost = std::move(total);
        best.Y[idx(x)] = fixed_x | Y;
        best.Y[idx(y)] = fixed_y | (shared - Y);
      }
    });
    return best;
  };

  const int smallest = std::min({I_AC.size(), I_AD.size(), I_BC.size(), I_BD.size()});
  const bool guess_diagonal = I_AC.size() == smallest || I_BD.size() == smallest;

  Pick best;
  auto consider = [&](const Pick& left, const Pick& right, Quarter lx, Quarter ly, Quarter rx, Quarter ry) {
    if (!left.cost || !right.cost) return;
    ExactCost total = *left.cost + *right.cost;
    if (!best.cost || total < *best.cost) {
      best.cost = std::move(total);
      best.Y[idx(lx)] = left.Y[idx(lx)];
      best.Y[idx(ly)] = left.Y[idx(ly)];
      best.Y[idx(rx)] = right.Y[idx(rx)];
      best.Y[idx(ry)] = right.Y[idx(ry)];
    }
  };

  if (guess_diagonal) {
    // Guess which of I_AC goes to A and which of I_BD goes to B.
    for_each_subset(I_AC, [&](JobSet Y_AC) {
      if (Y_AC.size() > q_size[idx(Quarter::kA)]) return;
      for_each_subset(I_BD, [&](JobSet Y_BD) {
        if (Y_BD.size() > q_size[idx(Quarter::kB)]) return;
        const Pick ad = best_pair(Quarter::kA, Quarter::kD, I_AD, Y_AC, I_BD - Y_BD);
        if (!ad.cost) return;
        const Pick bc = best_pair(Quarter::kB, Quarter::kC, I_BC, Y_BD, I_AC - Y_AC);
        consider(ad, bc, Quarter::kA, Quarter::kD, Quarter::kB, Quarter::kC);
      });
    });
  } else {
    // Guess which of I_AD goes to A and which of I_BC goes to B.
    for_each_subset(I_AD, [&](JobSet Y_AD) {
      if (Y_AD.size() > q_size[idx(Quarter::kA)]) return;
      for_each_subset(I_BC, [&](JobSet Y_BC) {
        if (Y_BC.size() > q_size[idx(Quarter::kB)]) return;
        const Pick ac = best_pair(Quarter::kA, Quarter::kC, I_AC, Y_AD, I_BC - Y_BC);
        if (!ac.cost) return;
        const Pick bd = best_pair(Quarter::kB, Quarter::kD, I_BD, Y_BC, I_AD - Y_AD);
        consider(ac, bd, Quarter::kA, Quarter::kC, Quarter::kB, Quarter::kD);
      });
    });
  }

  out.stats.states_expanded = tables.stats().states_expanded - before.states_expanded;
  out.stats.peak_table_size = tables.stats().peak_table_size;
  if (!best.cost) return out;

  std::vector<int> sequence;
  sequence.reserve(ctx.n);
  for (Quarter q : kQuarters) {
    const std::vector<int> part_seq = tables.sequence(q, W[idx(q)] | best.Y[idx(q)]);
    sequence.insert(sequence.end(), part_seq.begin(), part_seq.end());
  }
  Ordering order;
  try {
    order = Ordering::from_sequence(sequence);
  } catch (const SchedError&) {
    throw SchedError(ErrorKind::kInternalInconsistency, "independent quarters do not cover every job exactly once");
  }
  if (!validate_ordering(inst, order)) {
    throw SchedError(ErrorKind::kInternalInconsistency, "independent quarters assemble into an invalid ordering");
  }
  if (ordering_cost(inst, order) != *best.cost) {
    throw SchedError(ErrorKind::kInternalInconsistency, "independent quarter costs do not add up");
  }
  out.solution = Solution{std::move(order), *best.cost};
  return out;
}

BranchContext consistent_branch(const Instance& inst, JobSet matching, int v_begin, int v_end, const Ordering& order) {
  BranchContext ctx;
  ctx.n = inst.n();
  ctx.v_begin = v_begin;
  ctx.v_end = v_end;
  ctx.M = matching.with(v_begin).with(v_end);
  ctx.I1 = inst.all() - ctx.M;
  auto where = [&](int v) { return idx(quarter_of(ctx.n, order.position(v))); };
  for (int v : ctx.M) {
    ctx.M_q[where(v)].insert(v);
    (where(v) < 2 ? ctx.M_AB : ctx.M_CD).insert(v);
  }
  std::tie(ctx.Whalf_AB, ctx.Whalf_CD) = compute_w_half(inst, ctx.I1, ctx.M_AB, ctx.M_CD);
  for (int v : ctx.Whalf_AB | ctx.Whalf_CD) ctx.Whalf_q[where(v)].insert(v);
  compute_p_partitions(inst, ctx);
  for (int v : ctx.I2) {
    if (where(v) == idx(Quarter::kB)) {
      if (ctx.P_notA.contains(v)) {
        ++ctx.p_B;
      } else {
        ctx.Wq_B.insert(v);
      }
    } else if (where(v) == idx(Quarter::kC)) {
      if (ctx.P_notD.contains(v)) {
        ++ctx.p_C;
      } else {
        ctx.Wq_C.insert(v);
      }
    }
  }
  return ctx;
}

namespace {

struct Candidate {
  Ordering order;
  ExactCost cost;
  std::string path;
};

struct VariantResult {
  std::optional<Candidate> best;
  std::vector<BranchRecord> branches;
  std::vector<std::string> diagnostics;
};

class VariantSolver {
 public:
  VariantSolver(const NormalizedInstance& variant, JobSet matching, const SolveOptions& options)
      : inst_(variant.base),
        n_(inst_.n()),
        b_(*variant.v_begin),
        e_(*variant.v_end),
        matching_(matching),
        options_(options),
        tables_(inst_) {}

  VariantResult run() {
    const JobSet M = matching_.with(b_).with(e_);
    const JobSet I1 = inst_.all() - M;
    const int half = n_ / 2;
    for (const HalfAssignment& ha : enumerate_half_assignments(inst_, M, b_, e_)) {
      if (ha.M_AB.size() > half || ha.M_CD.size() > half) continue;
      BranchContext ctx;
      ctx.n = n_;
      ctx.v_begin = b_;
      ctx.v_end = e_;
      ctx.M = M;
      ctx.I1 = I1;
      ctx.M_AB = ha.M_AB;
      ctx.M_CD = ha.M_CD;
      try {
        std::tie(ctx.Whalf_AB, ctx.Whalf_CD) = compute_w_half(inst_, I1, ha.M_AB, ha.M_CD);
      } catch (const SchedError& e) {
        if (e.kind() != ErrorKind::kContradictoryBranch) throw;
        continue;
      }
      if ((ctx.M_AB | ctx.Whalf_AB).size() > half || (ctx.M_CD | ctx.Whalf_CD).size() > half) continue;
      solve_half_level(ctx);
    }
    return std::move(result_);
  }

 private:
  void solve_half_level(BranchContext& ctx) {
    const double threshold = options_.eps.eps2 * n_;
    const bool use_half = options_.force ? *options_.force == Strategy::kHalf
                                         : (ctx.Whalf_AB.size() >= threshold || ctx.Whalf_CD.size() >= threshold);
    if (use_half) {
      const HalfSide side = ctx.Whalf_AB.size() >= ctx.Whalf_CD.size() ? HalfSide::kAB : HalfSide::kCD;
      consider(solve_half_case(inst_, ctx, side), to_string(Strategy::kHalf));
      return;
    }
    for (const QuarterSets& ref :
         enumerate_quarter_refinements(inst_, ctx.M_AB | ctx.Whalf_AB, ctx.M_CD | ctx.Whalf_CD, b_, e_)) {
      BranchContext refined = ctx;
      for (int g = 0; g < 4; ++g) {
        refined.M_q[g] = ref[g] & ctx.M;
        refined.Whalf_q[g] = ref[g] - ctx.M;
      }
      compute_p_partitions(inst_, refined);
      solve_refinement(refined);
    }
  }

  void solve_refinement(BranchContext& ctx) {
    const int n4 = n_ / 4;
    const int free_B = n4 - (ctx.M_q[idx(Quarter::kB)] | ctx.Whalf_q[idx(Quarter::kB)]).size();
    const int free_C = n4 - (ctx.M_q[idx(Quarter::kC)] | ctx.Whalf_q[idx(Quarter::kC)]).size();
    std::map<std::pair<int, int>, bool> quarter_done;
    for (int p_B = 0; p_B <= n4; ++p_B) {
      const int wq_B = free_B - p_B;
      if (wq_B < 0 || p_B > ctx.P_notA.size() || wq_B > ctx.P_A.size() - ctx.p_A) continue;
      for (int p_C = 0; p_C <= n4; ++p_C) {
        const int wq_C = free_C - p_C;
        if (wq_C < 0 || p_C > ctx.P_notD.size() || wq_C > ctx.P_D.size() - ctx.p_D) continue;
        ctx.p_B = p_B;
        ctx.p_C = p_C;
        const std::optional<Quarter> q = pick_quarter_case(ctx, wq_B, wq_C);
        if (q) {
          const int p = *q == Quarter::kA ? ctx.p_A : *q == Quarter::kB ? p_B : *q == Quarter::kC ? p_C : ctx.p_D;
          // The labeled DP of one quarter case only reads that case's p value.
          if (quarter_done.emplace(std::pair{idx(*q), p}, true).second) {
            consider(solve_quarter_case(inst_, ctx, *q), to_string(quarter_strategy(*q)));
          }
        } else {
          solve_independent(ctx, wq_B, wq_C);
        }
      }
    }
  }

  // The quarter case to run, or nullopt for the independent case.
  std::optional<Quarter> pick_quarter_case(const BranchContext& ctx, int wq_B, int wq_C) {
    if (options_.force) {
      switch (*options_.force) {
        case Strategy::kQuarterA: return Quarter::kA;
        case Strategy::kQuarterB: return Quarter::kB;
        case Strategy::kQuarterC: return Quarter::kC;
        case Strategy::kQuarterD: return Quarter::kD;
        default: break;
      }
    }
    const std::array<int, 4> P_size{ctx.P_A.size(), ctx.P_notA.size(), ctx.P_notD.size(), ctx.P_D.size()};
    const std::array<int, 4> p{ctx.p_A, ctx.p_B, ctx.p_C, ctx.p_D};
    bool quarter = false;
    if (!options_.force) {
      const double big = (0.5 + options_.eps.eps3) * n_;
      const double small = (0.25 - options_.eps.eps4) * n_;
      for (int g = 0; g < 4; ++g) quarter = quarter || P_size[g] >= big || p[g] < small;
    }
    if (!quarter && (wq_B > options_.wquarter_cap || wq_C > options_.wquarter_cap)) {
      result_.diagnostics.push_back("quarter-forced guess of size " + std::to_string(std::max(wq_B, wq_C)) +
                                    " exceeds cap " + std::to_string(options_.wquarter_cap) +
                                    "; using the quarter case");
      quarter = true;
    }
    if (!quarter) return std::nullopt;
    int best = 0;
    for (int g = 1; g < 4; ++g) {
      if (P_size[g] - 2 * p[g] > P_size[best] - 2 * p[best]) best = g;
    }
    return static_cast<Quarter>(best);
  }

  void solve_independent(BranchContext& ctx, int wq_B, int wq_C) {
    for_each_subset_of_size(ctx.P_A, wq_B, [&](JobSet Wq_B) {
      for_each_subset_of_size(ctx.P_D - Wq_B, wq_C, [&](JobSet Wq_C) {
        ctx.Wq_B = Wq_B;
        ctx.Wq_C = Wq_C;
        consider(solve_independent_case(inst_, ctx, tables_), to_string(Strategy::kIndependent));
      });
    });
    ctx.Wq_B = JobSet{};
    ctx.Wq_C = JobSet{};
  }

  void consider(DpOutcome outcome, const char* path) {
    result_.branches.push_back({path, outcome.stats});
    if (!outcome.solution) return;
    Solution& sol = *outcome.solution;
    if (!validate_ordering(inst_, sol.ordering) || ordering_cost(inst_, sol.ordering) != sol.cost) {
      throw SchedError(ErrorKind::kInternalInconsistency, std::string("branch ") + path + " returned a bad ordering");
    }
    if (!result_.best || sol.cost < result_.best->cost) {
      result_.best = Candidate{std::move(sol.ordering), std::move(sol.cost), path};
    }
  }

  const Instance& inst_;
  int n_;
  int b_;
  int e_;
  JobSet matching_;
  const SolveOptions& options_;
  QuarterTables tables_;
  VariantResult result_;
};

}  // namespace

SolveResult solve(const Instance& inst, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SolveResult out;
  if (inst.n() == 0) {
    out.report.chosen_path = to_string(Strategy::kDcdp);
    return out;
  }
  const NormalizedInstance norm = normalize(inst);
  const Instance& base = norm.base;
  const int n = base.n();
  const MatchingResult matching = greedy_maximal_matching(comparability_graph(base));
  SolveReport& report = out.report;
  report.matching_size = static_cast<int>(matching.pairs.size());

  std::optional<Candidate> best;
  const bool use_dcdp =
      options.force ? *options.force == Strategy::kDcdp : report.matching_size >= options.eps.eps1 * n;
  if (use_dcdp) {
    DpOutcome dp = run_filtered(base, [&](JobSet X) { return is_downward_closed(base, X); });
    report.branches.push_back({to_string(Strategy::kDcdp), dp.stats});
    if (dp.solution) best = Candidate{std::move(dp.solution->ordering), dp.solution->cost, "dcdp"};
  } else {
    const std::vector<NormalizedInstance> variants = endpoint_variants(norm);
    std::vector<VariantResult> results(variants.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k = next++; k < variants.size(); k = next++) {
        results[k] = VariantSolver(variants[k], matching.M, options).run();
      }
    };
    const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(variants.size())));
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::exception_ptr> errors(threads);
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            worker();
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
      for (std::thread& th : pool) th.join();
      for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (VariantResult& r : results) {
      for (BranchRecord& b : r.branches) report.branches.push_back(std::move(b));
      for (std::string& d : r.diagnostics) report.diagnostics.push_back(std::move(d));
      if (r.best && (!best || r.best->cost < best->cost)) best = std::move(r.best);
    }
  }

  for (const BranchRecord& b : report.branches) report.total += b.stats;
  report.branches_explored = report.branches.size();
  if (!best) throw SchedError(ErrorKind::kInternalInconsistency, "no branch produced an ordering");
  if (!validate_ordering(base, best->order) || ordering_cost(base, best->order) != best->cost) {
    throw SchedError(ErrorKind::kInternalInconsistency, "best ordering fails revalidation");
  }
  report.chosen_path = best->path;
  out.ordering = restrict_to_original(norm, best->order);
  if (!validate_ordering(inst, out.ordering)) {
    throw SchedError(ErrorKind::kInternalInconsistency, "ordering on original jobs violates precedence");
  }
  out.cost = ordering_cost(inst, out.ordering);
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace sched
