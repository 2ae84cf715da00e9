#pragma once

#include <functional>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fixsum/bigint.hpp"
#include "fixsum/errors.hpp"

namespace fixsum {

namespace detail {

// Pascal triangle cache. Rows are half-width (k <= n/2); lookups fold with
// C(n,k) = C(n,n-k). Growth and reads share one mutex: a lookup copies a few
// limbs, which is cheap next to any caller's own bignum work.
class PascalCache {
 public:
  static Count choose(long long n, long long k) {
    static PascalCache cache;
    return cache.get(n, k);
  }

 private:
  Count get(long long n, long long k) {
    std::lock_guard<std::mutex> lock(mutex_);
    while (static_cast<long long>(rows_.size()) <= n) grow_row();
    if (k > n - k) k = n - k;
    return rows_[static_cast<size_t>(n)][static_cast<size_t>(k)];
  }

  void grow_row() {
    const size_t n = rows_.size();
    std::vector<Count> row(n / 2 + 1);
    row[0] = 1;
    auto prev = [this, n](size_t k) -> const Count& {
      const size_t kk = std::min(k, (n - 1) - k);
      return rows_[n - 1][kk];
    };
    for (size_t k = 1; k < row.size(); ++k) row[k] = prev(k - 1) + prev(k);
    rows_.push_back(std::move(row));
  }

  std::mutex mutex_;
  std::vector<std::vector<Count>> rows_{{Count(1)}};
};

}  // namespace detail

/// n choose k, exact; 0 outside 0 <= k <= n. Small k goes through the
/// multiplicative formula (exact stepwise division) so one-off queries at
/// large n never densify the row cache.
inline Count binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  if (k <= 16) {
    Count result = 1;
    for (long long i = 1; i <= k; ++i) {
      result *= n - k + i;
      result /= i;
    }
    return result;
  }
  return detail::PascalCache::choose(n, k);
}

/// n! as a Count.
inline Count factorial(long long n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  Count result = 1;
  for (long long i = 2; i <= n; ++i) result *= i;
  return result;
}

/// Number of allowed connected components (cycles, blocks, trees, ...) on m
/// labeled points, for m >= 1. Index 0 is unused.
struct ComponentWeights {
  std::vector<Count> c;

  static ComponentWeights tabulate(int n_max,
                                   const std::function<Count(int)>& weight) {
    ComponentWeights w;
    w.c.resize(static_cast<size_t>(n_max) + 1);
    for (int m = 1; m <= n_max; ++m) w.c[static_cast<size_t>(m)] = weight(m);
    return w;
  }

  const Count& at(int m) const { return c[static_cast<size_t>(m)]; }
  int max_size() const { return static_cast<int>(c.size()) - 1; }
};

/// Counts of labeled structures assembled from the given components:
/// G_0 = 1, G_n = sum_{m=1..n} C(n-1, m-1) * c_m * G_{n-m}.
/// Returns the full prefix G_0 .. G_{n_max}.
inline std::vector<Count> exp_formula_counts(const ComponentWeights& weights,
                                             int n_max) {
  if (n_max < 0) throw std::domain_error("exp_formula_counts: n_max < 0");
  if (weights.max_size() < n_max)
    throw std::invalid_argument("exp_formula_counts: weights too short");
  std::vector<Count> g(static_cast<size_t>(n_max) + 1);
  g[0] = 1;
  for (int n = 1; n <= n_max; ++n) {
    Count total = 0;
    for (int m = 1; m <= n; ++m) {
      const Count& cm = weights.at(m);
      if (cm == 0) continue;
      total += binomial(n - 1, m - 1) * cm * g[static_cast<size_t>(n - m)];
    }
    g[static_cast<size_t>(n)] = std::move(total);
  }
  return g;
}

/// Splits exp_formula_counts by the parity of the number of components:
/// first sequence counts structures with an even component count, second with
/// an odd count. Multisection: run the recurrence with weights c and with -c,
/// then halve the sum and difference. Every intermediate value is an exact
/// integer.
inline std::pair<std::vector<Count>, std::vector<Count>> parity_split_counts(
    const ComponentWeights& weights, int n_max) {
  const std::vector<Count> total = exp_formula_counts(weights, n_max);
  ComponentWeights negated = weights;
  for (auto& cm : negated.c) cm = -cm;
  const std::vector<Count> signed_sum = exp_formula_counts(negated, n_max);
  std::vector<Count> even(total.size());
  std::vector<Count> odd(total.size());
  for (size_t n = 0; n < total.size(); ++n) {
    Count e = total[n] + signed_sum[n];
    Count o = total[n] - signed_sum[n];
    if (e < 0 || o < 0 || bit_test(e, 0) || bit_test(o, 0))
      throw std::logic_error("parity_split_counts: non-integral split");
    even[n] = e >> 1;
    odd[n] = o >> 1;
  }
  return {std::move(even), std::move(odd)};
}

/// Inverts G_n = sum_k C(n,k) C^k D_{n-k}, i.e. extracts the fixed-point-free
/// sequence from a family with C interchangeable fixed-point types:
/// D_n = sum_k (-1)^k C(n,k) C^k G_{n-k}.
/// Throws DecompositionViolation if any D_n comes out negative.
inline std::vector<Count> binomial_inversion(const std::vector<Count>& g,
                                             int c, int n_max) {
  if (n_max < 0) throw std::domain_error("binomial_inversion: n_max < 0");
  if (static_cast<int>(g.size()) <= n_max)
    throw std::invalid_argument("binomial_inversion: sequence too short");
  std::vector<Count> d(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    Count acc = 0;
    Count c_power = 1;
    for (int k = 0; k <= n; ++k) {
      const Count term = binomial(n, k) * c_power * g[static_cast<size_t>(n - k)];
      if (k & 1)
        acc -= term;
      else
        acc += term;
      c_power *= c;
    }
    if (acc < 0)
      throw DecompositionViolation(
          "binomial_inversion: negative term at n=" + std::to_string(n));
    d[static_cast<size_t>(n)] = std::move(acc);
  }
  return d;
}

}  // namespace fixsum
