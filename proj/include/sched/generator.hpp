#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "sched/instance.hpp"

namespace sched {

enum class GenModel {
  /// Each index pair i < j gets an edge with probability density.
  kRandomDag,
  /// Job j continues the chain of job j-1 with probability density.
  kChainMix,
  /// floor(density * n / 2) disjoint comparable pairs, everything else free.
  kAntichainPlusMatching,
};

std::optional<GenModel> parse_gen_model(std::string_view name);
const char* to_string(GenModel model);

struct GenParams {
  int n = 8;
  GenModel model = GenModel::kRandomDag;
  double density = 0.3;
  std::uint64_t tmax = 10;
  std::uint64_t seed = 1;
};

/// Deterministic for a given parameter set on every platform: uses
/// std::mt19937_64 with hand-rolled integer and Bernoulli sampling.
/// Times are uniform in 0..tmax.
Instance generate(const GenParams& params);

}  // namespace sched
