#include "sched/generator.hpp"

#include <limits>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "sched/error.hpp"

namespace sched {

namespace {

// The standard distributions are implementation-defined, so sampling is done by hand.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound], rejection sampling to avoid modulo bias.
  std::uint64_t uniform(std::uint64_t bound) {
    if (bound == std::numeric_limits<std::uint64_t>::max()) return engine_();
    const std::uint64_t range = bound + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % range;
  }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

std::optional<GenModel> parse_gen_model(std::string_view name) {
  if (name == "random-dag") return GenModel::kRandomDag;
  if (name == "chain-mix") return GenModel::kChainMix;
  if (name == "antichain-plus-matching") return GenModel::kAntichainPlusMatching;
  return std::nullopt;
}

const char* to_string(GenModel model) {
  switch (model) {
    case GenModel::kRandomDag: return "random-dag";
    case GenModel::kChainMix: return "chain-mix";
    case GenModel::kAntichainPlusMatching: return "antichain-plus-matching";
  }
  return "unknown";
}

Instance generate(const GenParams& params) {
  const int n = params.n;
  if (n < 0 || n > kMaxJobs) throw SchedError(ErrorKind::kInvalidConfig, "n must lie in 0..64");
  if (!(params.density >= 0.0 && params.density <= 1.0)) {
    throw SchedError(ErrorKind::kInvalidConfig, "density must lie in [0, 1]");
  }
  Sampler rng(params.seed);
  std::vector<ExactCost> times;
  times.reserve(n);
  for (int v = 0; v < n; ++v) times.emplace_back(rng.uniform(params.tmax));

  std::vector<Edge> edges;
  switch (params.model) {
    case GenModel::kRandomDag:
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (rng.bernoulli(params.density)) edges.emplace_back(i, j);
        }
      }
      break;
    case GenModel::kChainMix:
      for (int j = 1; j < n; ++j) {
        if (rng.bernoulli(params.density)) edges.emplace_back(j - 1, j);
      }
      break;
    case GenModel::kAntichainPlusMatching: {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = n - 1; i > 0; --i) {
        std::swap(perm[i], perm[rng.uniform(static_cast<std::uint64_t>(i))]);
      }
      const int pairs = static_cast<int>(params.density * n / 2);
      for (int k = 0; k < pairs; ++k) edges.emplace_back(perm[2 * k], perm[2 * k + 1]);
      break;
    }
  }
  return Instance(n, std::move(times), edges);
}

}  // namespace sched
