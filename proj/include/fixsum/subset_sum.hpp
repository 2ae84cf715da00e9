#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fixsum/bigint.hpp"
#include "fixsum/combinatorics.hpp"

namespace fixsum {

/// E(r,k,n): number of k-subsets of [n] with element sum r, tabulated for one
/// fixed n over 0 <= r <= r_max, 0 <= k <= k_max.
///
/// The DP iterates n upward in place (include/exclude element n'), keeping a
/// single (k, r) layer. Rows are updated with k descending so the k-1 row read
/// for E(r-n', k-1, n'-1) still holds the previous layer. Once built the table
/// is read-only and safe to query from any thread.
class SubsetSumTable {
 public:
  explicit SubsetSumTable(int n, long long r_max = -1, int k_max = -1)
      : n_(n) {
    if (n < 0) throw std::domain_error("SubsetSumTable: n < 0");
    const long long full = static_cast<long long>(n) * (n + 1) / 2;
    r_max_ = (r_max < 0) ? full : std::min(r_max, full);
    // Larger k contributes only zero entries below r_max.
    int k_cap = 0;
    while (k_cap < n &&
           static_cast<long long>(k_cap + 1) * (k_cap + 2) / 2 <= r_max_)
      ++k_cap;
    k_max_ = (k_max < 0) ? k_cap : std::min(k_max, n);
    by_k_.assign(static_cast<size_t>(k_max_) + 1,
                 std::vector<Count>(static_cast<size_t>(r_max_) + 1));
    by_k_[0][0] = 1;
    for (long long element = 1; element <= n_; ++element) {
      for (int k = k_max_; k >= 1; --k) {
        auto& row = by_k_[static_cast<size_t>(k)];
        const auto& below = by_k_[static_cast<size_t>(k - 1)];
        for (long long r = r_max_; r >= element; --r) {
          const Count& carry = below[static_cast<size_t>(r - element)];
          if (carry != 0) row[static_cast<size_t>(r)] += carry;
        }
      }
    }
  }

  /// E(r, k, n()); 0 for any argument outside the tabulated window.
  const Count& count(long long r, int k) const {
    static const Count zero = 0;
    if (r < 0 || r > r_max_ || k < 0 || k > k_max_) return zero;
    return by_k_[static_cast<size_t>(k)][static_cast<size_t>(r)];
  }

  int n() const { return n_; }
  long long r_max() const { return r_max_; }
  int k_max() const { return k_max_; }

 private:
  int n_;
  long long r_max_ = 0;
  int k_max_ = 0;
  std::vector<std::vector<Count>> by_k_;
};

/// E(r,k,n) as a pure one-shot query. Out-of-range arguments return 0.
inline Count count_subsets(long long r, int k, int n) {
  if (r < 0 || k < 0) return 0;
  if (k == 0) return Count(r == 0 ? 1 : 0);
  if (n <= 0 || k > n) return 0;
  // Elements above r can never appear in a subset of positive values summing
  // to r.
  const int n_eff = static_cast<int>(std::min<long long>(n, r));
  if (k > n_eff) return 0;
  return SubsetSumTable(n_eff, r, k).count(r, k);
}

/// C_{r,k}(no conditions) = C(r-1, k-1): compositions of r into exactly k
/// positive parts. 0 when r < k or k <= 0.
inline Count count_compositions_unrestricted(long long r, int k) {
  if (k <= 0 || r < k) return 0;
  return binomial(r - 1, k - 1);
}

/// P_{r,k}: partitions of r into exactly k positive parts.
inline Count count_partitions(long long r, int k) {
  if (r < 0 || k < 0) return 0;
  if (k == 0 || r == 0) return Count(k == 0 && r == 0 ? 1 : 0);
  if (r < k) return 0;
  // Thread-local memo; p(r,k) = p(r-k,k) + p(r-1,k-1), rebuilt with geometric
  // growth when a request exceeds the cached window.
  struct Memo {
    long long r_cap = -1;
    int k_cap = -1;
    std::vector<std::vector<Count>> p;  // [k][r]
  };
  thread_local Memo memo;
  if (r > memo.r_cap || k > memo.k_cap) {
    const long long r_cap = std::max<long long>({r, 2 * memo.r_cap, 64});
    const int k_cap = std::max({k, 2 * memo.k_cap, 8});
    Memo next;
    next.r_cap = r_cap;
    next.k_cap = k_cap;
    next.p.assign(static_cast<size_t>(k_cap) + 1,
                  std::vector<Count>(static_cast<size_t>(r_cap) + 1));
    next.p[0][0] = 1;
    for (int kk = 1; kk <= k_cap; ++kk) {
      for (long long rr = kk; rr <= r_cap; ++rr) {
        Count v = next.p[static_cast<size_t>(kk - 1)][static_cast<size_t>(rr - 1)];
        if (rr >= kk) v += next.p[static_cast<size_t>(kk)][static_cast<size_t>(rr - kk)];
        next.p[static_cast<size_t>(kk)][static_cast<size_t>(rr)] = std::move(v);
      }
    }
    memo = std::move(next);
  }
  return memo.p[static_cast<size_t>(k)][static_cast<size_t>(r)];
}

/// P_{r,k}(>n): partitions of r into exactly k parts, each part > n.
/// Subtracting n from every part gives P_{r-kn,k}.
inline Count count_partitions_min_part(long long r, int k, int n) {
  if (k < 0 || n < 0) return 0;
  return count_partitions(r - static_cast<long long>(k) * n, k);
}

/// C_{r,k}(<=n and distinct) = k! * E(r,k,n): compositions of r into exactly
/// k distinct parts, each at most n (unbounded when n is absent).
inline Count count_compositions_distinct(long long r, int k,
                                         std::optional<long long> n = {}) {
  if (k < 0) return 0;
  const long long bound = n.has_value() ? std::min(*n, r) : r;
  if (bound < 0) return 0;
  return factorial(k) * count_subsets(r, k, static_cast<int>(bound));
}

}  // namespace fixsum
