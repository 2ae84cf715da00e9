#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fixsum/bigint.hpp"
#include "fixsum/combinatorics.hpp"

namespace fixsum {

/// Kernel parameter mu (the limit ratio of successive fixed-point-free
/// counts scaled by n) plus the truncation tolerance for the series.
struct KernelParams {
  double mu = 1.0;
  double tolerance = 1e-12;
};

/// Cutoff function c_k(alpha) = sum_{0 <= j < alpha} C(k,j) (-1)^j
/// (1 - j/alpha)^{k-1}, with the half-open range so the value is continuous
/// across integer alpha for k >= 2. c_1 is the indicator of (0, 1].
/// Codomain [0,1], support (0,k); the tiny float noise of the alternating
/// sum is clamped back into the codomain.
inline double cutoff_c(int k, double alpha) {
  if (k < 1) throw std::domain_error("cutoff_c: k must be >= 1");
  if (k == 1) return (alpha > 0.0 && alpha <= 1.0) ? 1.0 : 0.0;
  if (alpha <= 0.0 || alpha >= static_cast<double>(k)) return 0.0;
  double sum = 0.0;
  double binom = 1.0;  // C(k, j), updated incrementally
  double sign = 1.0;
  for (int j = 0; j < alpha && j <= k; ++j) {
    if (j > 0) {
      binom *= static_cast<double>(k - j + 1) / static_cast<double>(j);
      sign = -sign;
    }
    sum += sign * binom * std::pow(1.0 - static_cast<double>(j) / alpha, k - 1);
  }
  return std::clamp(sum, 0.0, 1.0);
}

/// c_k at a rational point alpha = p/q, as an exact fraction over the common
/// denominator p^{k-1}. Near the right edge of the support the true values
/// sink below double noise (~1e-13), so codomain, positivity, and strict
/// monotonicity claims are decided on this exact route; the double route
/// serves the kernel series, where the fifth-decimal table tolerance
/// dominates.
struct CutoffRational {
  Count numerator;
  Count denominator;
};

inline CutoffRational cutoff_c_exact(int k, long long p, long long q) {
  if (k < 1) throw std::domain_error("cutoff_c_exact: k must be >= 1");
  if (q <= 0) throw std::domain_error("cutoff_c_exact: q must be positive");
  if (k == 1) return {Count(p > 0 && p <= q ? 1 : 0), Count(1)};
  if (p <= 0) return {Count(0), Count(1)};
  CutoffRational result{Count(0), integer_power(p, k - 1)};
  for (long long j = 0; j <= k && j * q < p; ++j) {
    const Count term = binomial(k, j) * integer_power(p - j * q, k - 1);
    if (j & 1)
      result.numerator -= term;
    else
      result.numerator += term;
  }
  return result;
}

/// K_mu(alpha) = sum_{k >= 2} c_k(alpha) (alpha mu)^{k-1} / (k! (k-1)!).
/// The series is truncated once the crude remainder bound
/// sum_{k > K} (alpha mu)^{k-1} / (k! (k-1)!)  (using c_k <= 1)
/// drops below params.tolerance. Returns 0 for alpha <= 0.
inline double kernel_value(const KernelParams& params, double alpha) {
  if (!(params.mu > 0.0) || !(params.tolerance > 0.0))
    throw std::domain_error("kernel_value: mu and tolerance must be positive");
  if (alpha <= 0.0) return 0.0;
  const double x = alpha * params.mu;
  double term = x / 2.0;  // x^{k-1} / (k! (k-1)!) at k = 2
  double sum = 0.0;
  for (int k = 2; k <= 512; ++k) {
    sum += cutoff_c(k, alpha) * term;
    const double next = term * x / (static_cast<double>(k + 1) * k);
    // Ratios of successive terms only shrink, so a geometric tail bounds the
    // remainder once the next ratio is below 1.
    const double ratio = x / (static_cast<double>(k + 2) * (k + 1));
    if (ratio < 1.0 && next / (1.0 - ratio) < params.tolerance) break;
    term = next;
  }
  return sum;
}

/// The limiting scaled profile chi(alpha <= 1) + K_mu(alpha).
inline double predicted_scaled(const KernelParams& params, double alpha) {
  if (alpha <= 0.0) throw std::domain_error("predicted_scaled: alpha <= 0");
  return (alpha <= 1.0 ? 1.0 : 0.0) + kernel_value(params, alpha);
}

/// Residual of the delay differential equation
///   d/dalpha c_{k+1}(alpha) = -(k(k+1)/alpha^2) (1 - 1/alpha)^{k-1} c_k(alpha-1)
/// checked with a central difference of width h. alpha must be > 1 and
/// farther than h from the nearest integer, where the derivative exists.
inline double ck_ode_residual(int k, double alpha, double h) {
  if (k < 1) throw std::domain_error("ck_ode_residual: k must be >= 1");
  if (!(h > 0.0)) throw std::domain_error("ck_ode_residual: h must be positive");
  if (alpha <= 1.0) throw std::domain_error("ck_ode_residual: alpha must exceed 1");
  const double nearest = std::round(alpha);
  if (std::abs(alpha - nearest) <= h)
    throw std::domain_error("ck_ode_residual: alpha too close to an integer");
  const double derivative =
      (cutoff_c(k + 1, alpha + h) - cutoff_c(k + 1, alpha - h)) / (2.0 * h);
  const double rhs = -(static_cast<double>(k) * (k + 1) / (alpha * alpha)) *
                     std::pow(1.0 - 1.0 / alpha, k - 1) * cutoff_c(k, alpha - 1.0);
  return std::abs(derivative - rhs);
}

}  // namespace fixsum
