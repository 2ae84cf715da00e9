#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fixsum/bigint.hpp"
#include "fixsum/families.hpp"
#include "fixsum/profile.hpp"

namespace fixsum {

struct PmfRow {
  int k = 0;
  double observed = 0.0;  // G_{n,k} / G_n
  double poisson = 0.0;   // e^{-lambda} lambda^k / k!
};

/// Measured Poisson-family parameters at finite n:
///   rho_hat    = n G_{n-1} / G_n
///   C_hat      = g(1,n) / D_{n-1}
///   lambda_hat = sum_k k G_{n,k} / G_n   (expected number of fixed points)
///   mu_hat     = n g(2,n) / g(1,n)       (the parameter that scales the k=2
///                                         series term; the measurable
///                                         surrogate for lambda/C)
/// Estimates with a vanishing denominator are reported as +infinity.
struct PoissonDiagnostics {
  std::string family_id;
  int n = 0;
  double rho_hat = 0.0;
  double C_hat = 0.0;
  double lambda_hat = 0.0;
  double mu_hat = 0.0;
  std::vector<PmfRow> pmf_rows;
};

namespace detail {

inline double ratio_or_infinity(const Count& num, const Count& den) {
  if (den == 0) return std::numeric_limits<double>::infinity();
  return ratio_as_double(num, den);
}

}  // namespace detail

inline PoissonDiagnostics estimate_parameters(const Family& family, int n,
                                              int pmf_k_max = 6) {
  if (n < 3) throw std::domain_error("estimate_parameters: n must be >= 3");
  PoissonDiagnostics diag;
  diag.family_id = family.id();
  diag.n = n;

  const Count g_n = family.total(n);
  diag.rho_hat = detail::ratio_or_infinity(Count(n) * family.total(n - 1), g_n);
  diag.C_hat = detail::ratio_or_infinity(family.with_fixed_label_set(1, n),
                                         family.fixed_point_free(n - 1));
  diag.mu_hat = detail::ratio_or_infinity(
      Count(n) * family.with_fixed_label_set(2, n),
      family.with_fixed_label_set(1, n));

  Count weighted = 0;
  Count choose = 1;  // C(n,k), advanced by the ratio recurrence
  for (int k = 1; k <= n; ++k) {
    choose *= n - k + 1;
    choose /= k;
    weighted += k * choose * family.with_fixed_label_set(k, n);
  }
  diag.lambda_hat = detail::ratio_or_infinity(weighted, g_n);

  const double lambda = diag.lambda_hat;
  const bool finite_lambda = std::isfinite(lambda);
  double poisson_term = finite_lambda ? std::exp(-lambda) : 0.0;
  for (int k = 0; k <= std::min(pmf_k_max, n); ++k) {
    if (k > 0 && finite_lambda) poisson_term *= lambda / k;
    PmfRow row;
    row.k = k;
    row.observed =
        detail::ratio_or_infinity(family.with_fixed_point_count(k, n), g_n);
    row.poisson = poisson_term;
    diag.pmf_rows.push_back(row);
  }
  return diag;
}

/// Largest deviation |f(n,r)/g(1,n) - predicted| over the integer-r grid in
/// the alpha window. 0 for an empty window.
inline double gap_deviation(const Family& family, int n, double mu,
                            double alpha_min, double alpha_max) {
  const ScaledProfile sp = scaled_profile(family, n, alpha_min, alpha_max, mu);
  double worst = 0.0;
  for (const auto& row : sp.rows)
    worst = std::max(worst, std::abs(row.scaled - row.predicted));
  return worst;
}

}  // namespace fixsum
