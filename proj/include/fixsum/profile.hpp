#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fixsum/asymptotics.hpp"
#include "fixsum/bigint.hpp"
#include "fixsum/errors.hpp"
#include "fixsum/families.hpp"
#include "fixsum/parallel.hpp"
#include "fixsum/subset_sum.hpp"

namespace fixsum {

/// f(n,r) for one family and size, stored sparsely: keys are the r with
/// f(n,r) > 0, plus r = 0 always. Sums of fixed-point labels never exceed
/// n(n+1)/2.
struct Profile {
  std::string family_id;
  int n = 0;
  std::map<long long, Count> values;

  Count at(long long r) const {
    const auto it = values.find(r);
    return it == values.end() ? Count(0) : it->second;
  }

  Count total_mass() const {
    Count mass = 0;
    for (const auto& [r, c] : values) mass += c;
    return mass;
  }

  long long support_max() const {
    return static_cast<long long>(n) * (n + 1) / 2;
  }
};

/// Exact profile: f(n,0) = D_n and, for r >= 1,
///   f(n,r) = sum_{k >= 1} E(r,k,n) g(k,n),
/// with k capped by k(k+1)/2 <= r. Rows are independent and are evaluated in
/// parallel once the subset-sum table and the g(k,n) prefix are built.
inline Profile exact_profile(const Family& family, int n, long long r_max = -1) {
  const long long support = static_cast<long long>(n) * (n + 1) / 2;
  const long long r_hi = (r_max < 0) ? support : std::min(r_max, support);

  Profile profile;
  profile.family_id = family.id();
  profile.n = n;
  profile.values[0] = family.fixed_point_free(n);

  int k_max = 0;
  while (k_max < n && static_cast<long long>(k_max + 1) * (k_max + 2) / 2 <= r_hi)
    ++k_max;
  std::vector<Count> g_of_k(static_cast<size_t>(k_max) + 1);
  for (int k = 1; k <= k_max; ++k) g_of_k[static_cast<size_t>(k)] = family.with_fixed_label_set(k, n);

  const SubsetSumTable table(n, r_hi, k_max);
  std::vector<Count> row(static_cast<size_t>(std::max<long long>(r_hi, 0)) + 1);
  parallel_chunks(1, r_hi + 1, [&](long long lo, long long hi) {
    for (long long r = lo; r < hi; ++r) {
      Count f = 0;
      for (int k = 1; k <= k_max && static_cast<long long>(k) * (k + 1) / 2 <= r; ++k) {
        const Count& e = table.count(r, k);
        if (e != 0) f += e * g_of_k[static_cast<size_t>(k)];
      }
      row[static_cast<size_t>(r)] = std::move(f);
    }
  });
  for (long long r = 1; r <= r_hi; ++r)
    if (row[static_cast<size_t>(r)] != 0)
      profile.values.emplace(r, std::move(row[static_cast<size_t>(r)]));
  return profile;
}

/// Profile by direct enumeration of every structure. Throws TooLargeError
/// beyond the family's brute-force bound.
inline Profile brute_force_profile(const Family& family, int n) {
  Profile profile;
  profile.family_id = family.id();
  profile.n = n;
  profile.values = family.brute_force_histogram(n);
  profile.values.try_emplace(0, 0);
  return profile;
}

struct ScaledProfileRow {
  long long r = 0;
  double alpha = 0.0;      // r/n
  double scaled = 0.0;     // f(n,r) / g(1,n)
  double predicted = 0.0;  // chi(r <= n) + K_mu(r/n)
};

/// Exact profile over an alpha window, normalized by g(1,n) (the coefficient
/// of the unit jump), next to the limiting prediction for the given mu.
struct ScaledProfile {
  std::string family_id;
  int n = 0;
  double mu = 0.0;
  std::vector<ScaledProfileRow> rows;
};

inline ScaledProfile scaled_profile(const Family& family, int n, double alpha_min,
                                    double alpha_max, double mu) {
  if (n < 2) throw std::domain_error("scaled_profile: n must be >= 2");
  if (!(alpha_min > 0.0) || !(alpha_min < alpha_max))
    throw std::domain_error("scaled_profile: need 0 < alpha_min < alpha_max");
  if (!(mu > 0.0)) throw std::domain_error("scaled_profile: mu must be positive");

  ScaledProfile result;
  result.family_id = family.id();
  result.n = n;
  result.mu = mu;

  const long long r_lo = static_cast<long long>(std::ceil(alpha_min * n));
  const long long r_hi = static_cast<long long>(std::floor(alpha_max * n));
  if (r_lo > r_hi) return result;

  const Profile profile = exact_profile(family, n, r_hi);
  const Count g1 = family.with_fixed_label_set(1, n);
  const KernelParams params{mu, 1e-12};
  for (long long r = std::max<long long>(r_lo, 1); r <= r_hi; ++r) {
    ScaledProfileRow row;
    row.r = r;
    row.alpha = static_cast<double>(r) / n;
    row.scaled = ratio_as_double(profile.at(r), g1);
    row.predicted = predicted_scaled(params, row.alpha);
    result.rows.push_back(row);
  }
  return result;
}

/// f(n,n) / f(n,n+1), the drop across r = n. Throws DegenerateError when
/// f(n,n+1) = 0 (e.g. n = 3, where no fixed-point set sums to 4).
inline double jump_ratio(const Family& family, int n) {
  if (n < 2) throw std::domain_error("jump_ratio: n must be >= 2");
  const Profile profile = exact_profile(family, n, static_cast<long long>(n) + 1);
  const Count above = profile.at(static_cast<long long>(n) + 1);
  if (above == 0)
    throw DegenerateError(family.id() + ": f(n,n+1) = 0 at n = " + std::to_string(n));
  return ratio_as_double(profile.at(n), above);
}

}  // namespace fixsum
