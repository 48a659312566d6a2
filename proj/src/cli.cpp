#include "sched/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "sched/algorithms.hpp"
#include "sched/error.hpp"
#include "sched/exchange.hpp"
#include "sched/generator.hpp"
#include "sched/instance_io.hpp"
#include "sched/structure.hpp"

namespace sched {

namespace {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCyclicPrecedence:
    case ErrorKind::kInfeasible: return kExitInfeasible;
    default: return kExitMalformed;
  }
}

std::string format_ms(double ms) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << ms;
  return os.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw SchedError(ErrorKind::kMalformedInput, "cannot write " + path);
  file << text;
  if (!file) throw SchedError(ErrorKind::kMalformedInput, "cannot write " + path);
}

struct SolveArgs {
  std::string input;
  std::string algo = "full";
  EpsilonConfig eps = EpsilonConfig::defaults();
  bool eps_unchecked = false;
  std::string force;
  std::string stats;
  int threads = 1;
  int wquarter_cap = 3;
  int oracle_cap = kDefaultOracleCap;
  bool no_timing = false;
};

SolveOptions solve_options(const SolveArgs& a) {
  SolveOptions o;
  o.eps = a.eps;
  if (a.eps_unchecked) {
    o.eps.check_basic();
  } else {
    o.eps.check();
  }
  if (!a.force.empty()) {
    o.force = parse_strategy(a.force);
    if (!o.force) throw SchedError(ErrorKind::kInvalidConfig, "unknown strategy '" + a.force + "'");
  }
  if (a.wquarter_cap < 0) throw SchedError(ErrorKind::kInvalidConfig, "--wquarter-cap must be nonnegative");
  o.wquarter_cap = a.wquarter_cap;
  o.threads = std::max(1, a.threads);
  return o;
}

Algo algo_or_throw(const std::string& name) {
  const std::optional<Algo> algo = parse_algo(name);
  if (!algo) throw SchedError(ErrorKind::kInvalidConfig, "unknown algorithm '" + name + "'");
  return *algo;
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const Instance inst = read_instance(a.input);
  const Algo algo = algo_or_throw(a.algo);
  const AlgoResult r = run_algorithm(inst, algo, solve_options(a), a.oracle_cap);
  for (const std::string& d : r.diagnostics) err << "note: " << d << "\n";
  out << "cost=" << r.cost.to_string() << " order=" << join_indices(r.ordering.sequence()) << "\n";
  if (!a.stats.empty()) {
    std::ostringstream csv;
    csv << "algo,chosen_path,matching_size,branches_explored," << DpStats::csv_header() << ",wall_ms\n";
    csv << to_string(algo) << "," << r.chosen_path << "," << r.matching_size << "," << r.branches_explored << ","
        << r.stats.csv_row() << "," << format_ms(a.no_timing ? 0.0 : r.wall_ms) << "\n";
    write_text(a.stats, csv.str(), out);
  }
  return kExitOk;
}

int cmd_verify(const std::string& input, const std::string& order_text, std::ostream& out) {
  const Instance inst = read_instance(input);
  const std::vector<int> sequence = parse_index_list(order_text);
  if (static_cast<int>(sequence.size()) != inst.n()) {
    throw SchedError(ErrorKind::kMalformedInput, "order lists " + std::to_string(sequence.size()) +
                                                     " jobs, instance has " + std::to_string(inst.n()));
  }
  for (int v : sequence) {
    if (v < 0 || v >= inst.n()) throw SchedError(ErrorKind::kMalformedInput, "job " + std::to_string(v) + " out of range");
  }
  Ordering order;
  try {
    order = Ordering::from_sequence(sequence);
  } catch (const SchedError& e) {
    throw SchedError(ErrorKind::kMalformedInput, e.what());
  }
  const bool valid = validate_ordering(inst, order);
  out << "valid=" << (valid ? "true" : "false") << " cost=" << ordering_cost(inst, order).to_string() << "\n";
  return valid ? kExitOk : kExitInvalidOrder;
}

int cmd_gen(const GenParams& params, const std::string& model, const std::string& path, std::ostream& out) {
  GenParams p = params;
  const std::optional<GenModel> m = parse_gen_model(model);
  if (!m) throw SchedError(ErrorKind::kInvalidConfig, "unknown model '" + model + "'");
  p.model = *m;
  write_text(path, instance_to_json(generate(p)), out);
  return kExitOk;
}

int cmd_count(const std::string& input, const std::string& what, const std::string& k_text, std::ostream& out,
              std::ostream& err) {
  const Instance inst = read_instance(input);
  std::uint64_t count = 0;
  ExactCost bound;
  if (what == "ideals") {
    count = count_order_ideals(inst);
    const MatchingResult m = greedy_maximal_matching(comparability_graph(inst));
    bound = order_ideal_bound(inst.n(), static_cast<int>(m.pairs.size()));
  } else if (what == "non-exch-succ" || what == "non-exch-pred") {
    if (k_text.empty()) throw SchedError(ErrorKind::kMalformedInput, "--K is required for " + what);
    JobSet K;
    for (int v : parse_index_list(k_text)) {
      if (v < 0 || v >= inst.n()) throw SchedError(ErrorKind::kMalformedInput, "job " + std::to_string(v) + " out of range");
      K.insert(v);
    }
    if (inst.succ_set(K).intersects(K)) throw SchedError(ErrorKind::kMalformedInput, "K must be an antichain");
    const ExchangeMode mode = what == "non-exch-succ" ? ExchangeMode::kSucc : ExchangeMode::kPred;
    count = enumerate_non_exchangeable(inst, K, mode).size();
    bound = non_exchangeable_bound(K.size(), (inst.pred_set(K) | inst.succ_set(K)).size());
  } else {
    throw SchedError(ErrorKind::kMalformedInput, "unknown count '" + what + "'");
  }
  out << "count=" << count << " bound=" << bound.to_string() << "\n";
  if (ExactCost{count} > bound) {
    err << "error: count exceeds bound\n";
    return kExitBoundViolated;
  }
  return kExitOk;
}

struct BenchArgs {
  std::string dir;
  std::string algos = "brute,dp,dcdp,full";
  std::string out;
  int jobs = 1;
  bool no_timing = false;
};

struct BenchRow {
  std::string instance;
  int n = 0;
  int matching_size = 0;
  std::string algo;
  std::string cost;
  std::uint64_t states = 0;
  double wall_ms = 0;
  std::string path;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(a.dir)) throw SchedError(ErrorKind::kMalformedInput, "not a directory: " + a.dir);
  std::vector<Algo> algos;
  std::string rest = a.algos;
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    algos.push_back(algo_or_throw(rest.substr(0, comma)));
    rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
  }
  std::sort(algos.begin(), algos.end(), [](Algo x, Algo y) { return std::string(to_string(x)) < to_string(y); });
  algos.erase(std::unique(algos.begin(), algos.end()), algos.end());

  std::vector<fs::path> files;
  for (const fs::directory_entry& e : fs::directory_iterator(a.dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& x, const fs::path& y) {
    return x.filename().string() < y.filename().string();
  });
  std::vector<Instance> instances;
  instances.reserve(files.size());
  for (const fs::path& f : files) instances.push_back(read_instance(f));

  struct Slot {
    std::optional<BenchRow> row;
    std::string skipped;
  };
  const std::size_t tasks = files.size() * algos.size();
  std::vector<Slot> slots(tasks);
  std::vector<std::exception_ptr> errors(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks; k = next++) {
      const std::size_t i = k / algos.size();
      const Algo algo = algos[k % algos.size()];
      try {
        const AlgoResult r = run_algorithm(instances[i], algo);
        slots[k].row = BenchRow{files[i].filename().string(), instances[i].n(), r.matching_size, to_string(algo),
                                r.cost.to_string(), r.stats.states_expanded, a.no_timing ? 0.0 : r.wall_ms,
                                r.chosen_path};
      } catch (const SchedError& e) {
        if (e.kind() != ErrorKind::kInstanceTooLarge) {
          errors[k] = std::current_exception();
        } else {
          slots[k].skipped = e.what();
        }
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(a.jobs, static_cast<int>(std::max<std::size_t>(tasks, 1))));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::ostringstream csv;
  csv << kBenchHeader << "\n";
  int status = kExitOk;
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::optional<std::string> cost;
    for (std::size_t j = 0; j < algos.size(); ++j) {
      const Slot& s = slots[i * algos.size() + j];
      if (!s.row) {
        err << "note: skipped " << to_string(algos[j]) << " on " << files[i].filename().string() << ": " << s.skipped
            << "\n";
        continue;
      }
      const BenchRow& r = *s.row;
      csv << r.instance << "," << r.n << "," << r.matching_size << "," << r.algo << "," << r.cost << "," << r.states
          << "," << format_ms(r.wall_ms) << "," << r.path << "\n";
      if (cost && *cost != r.cost) {
        err << "error: cost mismatch on " << r.instance << " (" << *cost << " vs " << r.cost << " from " << r.algo
            << ")\n";
        status = kExitCostMismatch;
      }
      if (!cost) cost = r.cost;
    }
  }
  write_text(a.out, csv.str(), out);
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact single-machine scheduling with precedence constraints"};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--input", sa.input, "Instance JSON")->required();
  solve->add_option("--algo", sa.algo, "brute, dp, dcdp or full");
  solve->add_option("--eps1", sa.eps.eps1);
  solve->add_option("--eps2", sa.eps.eps2);
  solve->add_option("--eps3", sa.eps.eps3);
  solve->add_option("--eps4", sa.eps.eps4);
  solve->add_flag("--eps-unchecked", sa.eps_unchecked, "Only require 0 <= eps1 <= ... <= eps4 <= 1");
  solve->add_option("--force", sa.force, "dcdp, half, quarters0-A..D or independent");
  solve->add_option("--stats", sa.stats, "Write a one-row stats CSV");
  solve->add_option("--threads", sa.threads);
  solve->add_option("--wquarter-cap", sa.wquarter_cap);
  solve->add_option("--oracle-cap", sa.oracle_cap);
  solve->add_flag("--no-timing", sa.no_timing, "Report wall_ms as 0");

  std::string verify_input;
  std::string verify_order;
  CLI::App* verify = app.add_subcommand("verify", "Check an ordering and print its cost");
  verify->add_option("--input", verify_input)->required();
  verify->add_option("--order", verify_order, "Jobs in schedule order, e.g. 2,0,1")->required();

  GenParams gp;
  std::string gen_model = "random-dag";
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--n", gp.n);
  gen->add_option("--model", gen_model, "random-dag, chain-mix or antichain-plus-matching");
  gen->add_option("--density", gp.density);
  gen->add_option("--tmax", gp.tmax);
  gen->add_option("--seed", gp.seed);
  gen->add_option("--out", gen_out);

  std::string count_input;
  std::string count_what = "ideals";
  std::string count_k;
  CLI::App* count = app.add_subcommand("count", "Count order ideals or non-exchangeable sets");
  count->add_option("--input", count_input)->required();
  count->add_option("--what", count_what, "ideals, non-exch-succ or non-exch-pred");
  count->add_option("--K", count_k, "Antichain, e.g. 0,1");

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand("bench", "Run algorithms over a directory of instances");
  bench->add_option("--dir", ba.dir)->required();
  bench->add_option("--algos", ba.algos);
  bench->add_option("--out", ba.out);
  bench->add_option("--jobs", ba.jobs);
  bench->add_flag("--no-timing", ba.no_timing, "Report wall_ms as 0");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }

  try {
    if (*solve) return cmd_solve(sa, out, err);
    if (*verify) return cmd_verify(verify_input, verify_order, out);
    if (*gen) return cmd_gen(gp, gen_model, gen_out, out);
    if (*count) return cmd_count(count_input, count_what, count_k, out, err);
    if (*bench) return cmd_bench(ba, out, err);
  } catch (const SchedError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
  return kExitMalformed;
}

}  // namespace sched
