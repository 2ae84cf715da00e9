#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fixsum/errors.hpp"
#include "fixsum/families.hpp"
#include "fixsum/parallel.hpp"
#include "fixsum/rng.hpp"

namespace fixsum {

/// One Monte-Carlo run: draw `trials` structures uniformly from the family at
/// size n and histogram the sum of fixed-point labels. With
/// condition_on_fixed_points set, draws with no fixed point (X = 0) are
/// rejected and only counted.
struct SampleConfig {
  std::string family_id;
  int n = 0;
  uint64_t trials = 1;
  uint64_t seed = 0;
  bool condition_on_fixed_points = false;
};

struct EmpiricalHistogram {
  std::map<long long, uint64_t> counts;
  uint64_t trials = 0;
  uint64_t rejections = 0;

  uint64_t accepted() const { return trials - rejections; }

  double probability(long long r) const {
    const auto it = counts.find(r);
    const uint64_t c = it == counts.end() ? 0 : it->second;
    return accepted() == 0 ? 0.0
                           : static_cast<double>(c) / static_cast<double>(accepted());
  }

  /// Binomial standard error of probability(r).
  double standard_error(long long r) const {
    if (accepted() == 0) return 0.0;
    const double p = probability(r);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(accepted()));
  }

  bool operator==(const EmpiricalHistogram&) const = default;
};

/// Deterministic given the config: trial t draws from trial_stream(seed, t)
/// regardless of how trials are chunked across threads.
inline EmpiricalHistogram empirical_distribution(const SampleConfig& config) {
  const Family& family = find_family(config.family_id);
  if (!family.supports_sampling()) throw UnsupportedFamilyError(family.id());
  if (config.trials < 1)
    throw std::domain_error("empirical_distribution: trials must be >= 1");
  if (config.n < 0) throw std::domain_error("empirical_distribution: n < 0");

  EmpiricalHistogram result;
  result.trials = config.trials;

  const int workers = thread_budget();
  std::vector<std::map<long long, uint64_t>> partial_counts(
      static_cast<size_t>(workers) + 1);
  std::vector<uint64_t> partial_rejections(static_cast<size_t>(workers) + 1, 0);
  std::atomic<size_t> next_slot{0};
  parallel_chunks(0, static_cast<long long>(config.trials),
                  [&](long long lo, long long hi) {
                    const size_t slot = next_slot.fetch_add(1);
                    auto& counts = partial_counts[slot];
                    auto& rejected = partial_rejections[slot];
                    for (long long t = lo; t < hi; ++t) {
                      SplitMix64 rng =
                          trial_stream(config.seed, static_cast<uint64_t>(t));
                      const long long x =
                          family.sample_fixed_point_sum(config.n, rng);
                      if (config.condition_on_fixed_points && x == 0)
                        ++rejected;
                      else
                        ++counts[x];
                    }
                  });
  for (size_t slot = 0; slot < partial_counts.size(); ++slot) {
    result.rejections += partial_rejections[slot];
    for (const auto& [r, c] : partial_counts[slot]) result.counts[r] += c;
  }
  return result;
}

}  // namespace fixsum
