#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fixsum/bigint.hpp"
#include "fixsum/combinatorics.hpp"
#include "fixsum/errors.hpp"
#include "fixsum/rng.hpp"

namespace fixsum {

namespace detail {

// Grow-on-demand prefix of an exact integer sequence. Single mutex for reads
// and growth; a lookup copies a value, which is cheap next to the callers'
// own arithmetic.
class LazySequence {
 public:
  using Generator = std::function<std::vector<Count>(int)>;

  explicit LazySequence(Generator gen) : gen_(std::move(gen)) {}

  Count at(int n) const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (n >= static_cast<int>(values_.size())) {
      const int target =
          std::max({n, 2 * static_cast<int>(values_.size()), 16});
      values_ = gen_(target);
    }
    return values_[static_cast<size_t>(n)];
  }

 private:
  mutable std::mutex mutex_;
  mutable std::vector<Count> values_;
  Generator gen_;
};

using LazySeqPtr = std::shared_ptr<const LazySequence>;

inline LazySeqPtr make_lazy(LazySequence::Generator gen) {
  return std::make_shared<const LazySequence>(std::move(gen));
}

// --- brute-force enumerators (direct structure generation) -----------------

enum class PermFilter { All, Involution, OddCycleLengths, OddCycleCount };

inline std::map<long long, Count> permutation_histogram(int n, PermFilter filter) {
  std::map<long long, Count> hist;
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<bool> seen(static_cast<size_t>(n));
  do {
    std::fill(seen.begin(), seen.end(), false);
    bool keep = true;
    int cycles = 0;
    long long fixed_sum = 0;
    for (int i = 0; i < n && keep; ++i) {
      if (seen[static_cast<size_t>(i)]) continue;
      int length = 0;
      for (int j = i; !seen[static_cast<size_t>(j)]; j = p[static_cast<size_t>(j)]) {
        seen[static_cast<size_t>(j)] = true;
        ++length;
      }
      ++cycles;
      if (length == 1) fixed_sum += i + 1;
      if (filter == PermFilter::Involution && length > 2) keep = false;
      if (filter == PermFilter::OddCycleLengths && length % 2 == 0) keep = false;
    }
    if (filter == PermFilter::OddCycleCount && cycles % 2 == 0) keep = false;
    if (keep) ++hist[fixed_sum];
  } while (std::next_permutation(p.begin(), p.end()));
  return hist;
}

inline std::map<long long, Count> function_histogram(int n, bool partial) {
  std::map<long long, Count> hist;
  // Odometer over all assignments. For partial functions digit 0 means
  // "undefined" and digit v >= 1 means f(x) = v; for total functions digit d
  // means f(x) = d+1.
  const int base = partial ? n + 1 : n;
  std::vector<int> digit(static_cast<size_t>(n), 0);
  for (;;) {
    long long fixed_sum = 0;
    for (int x = 1; x <= n; ++x) {
      const int d = digit[static_cast<size_t>(x - 1)];
      const bool fixed = partial ? (d == 0 || d == x) : (d + 1 == x);
      if (fixed) fixed_sum += x;
    }
    ++hist[fixed_sum];
    int pos = 0;
    while (pos < n && ++digit[static_cast<size_t>(pos)] == base) {
      digit[static_cast<size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == n) break;
    if (n == 0) break;
  }
  return hist;
}

inline std::map<long long, Count> set_partition_histogram(int n) {
  std::map<long long, Count> hist;
  std::vector<int> block(static_cast<size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int max_used) {
    if (i == n) {
      std::map<int, std::pair<int, int>> size_and_member;  // block -> (size, last member)
      for (int v = 0; v < n; ++v) {
        auto& entry = size_and_member[block[static_cast<size_t>(v)]];
        ++entry.first;
        entry.second = v + 1;
      }
      long long fixed_sum = 0;
      for (const auto& [b, entry] : size_and_member)
        if (entry.first == 1) fixed_sum += entry.second;
      ++hist[fixed_sum];
      return;
    }
    for (int b = 0; b <= max_used + 1; ++b) {
      block[static_cast<size_t>(i)] = b;
      rec(i + 1, std::max(max_used, b));
    }
  };
  if (n == 0)
    ++hist[0];
  else
    rec(0, -1);
  return hist;
}

inline std::map<long long, Count> rooted_forest_histogram(int n) {
  std::map<long long, Count> hist;
  // parent[v] in {0..n}, 0 = root. A map is a rooted forest iff following
  // parents from every vertex reaches a root (no cycles).
  std::vector<int> parent(static_cast<size_t>(n), 0);
  for (;;) {
    bool acyclic = true;
    for (int v = 1; v <= n && acyclic; ++v) {
      int steps = 0;
      int u = v;
      while (u != 0 && steps <= n) {
        u = parent[static_cast<size_t>(u - 1)];
        ++steps;
      }
      if (u != 0) acyclic = false;
    }
    if (acyclic) {
      std::vector<bool> has_child(static_cast<size_t>(n), false);
      for (int v = 1; v <= n; ++v) {
        const int u = parent[static_cast<size_t>(v - 1)];
        if (u != 0) has_child[static_cast<size_t>(u - 1)] = true;
      }
      long long fixed_sum = 0;
      for (int v = 1; v <= n; ++v)
        if (parent[static_cast<size_t>(v - 1)] == 0 && !has_child[static_cast<size_t>(v - 1)])
          fixed_sum += v;
      ++hist[fixed_sum];
    }
    int pos = 0;
    while (pos < n && ++parent[static_cast<size_t>(pos)] == n + 1) {
      parent[static_cast<size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == n) break;
    if (n == 0) break;
  }
  return hist;
}

inline std::map<long long, Count> unrooted_forest_histogram(int n) {
  std::map<long long, Count> hist;
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
  const int m = static_cast<int>(edges.size());
  std::vector<int> root(static_cast<size_t>(n) + 1);
  std::function<int(int)> find = [&](int v) {
    while (root[static_cast<size_t>(v)] != v) v = root[static_cast<size_t>(v)];
    return v;
  };
  for (unsigned long long mask = 0; mask < (1ull << m); ++mask) {
    std::iota(root.begin(), root.end(), 0);
    std::vector<int> degree(static_cast<size_t>(n) + 1, 0);
    bool acyclic = true;
    for (int e = 0; e < m && acyclic; ++e) {
      if (!(mask & (1ull << e))) continue;
      const auto [a, b] = edges[static_cast<size_t>(e)];
      const int ra = find(a), rb = find(b);
      if (ra == rb) {
        acyclic = false;
      } else {
        root[static_cast<size_t>(ra)] = rb;
        ++degree[static_cast<size_t>(a)];
        ++degree[static_cast<size_t>(b)];
      }
    }
    if (!acyclic) continue;
    long long fixed_sum = 0;
    for (int v = 1; v <= n; ++v)
      if (degree[static_cast<size_t>(v)] == 0) fixed_sum += v;
    ++hist[fixed_sum];
  }
  return hist;
}

// --- uniform samplers (X = sum of fixed-point labels of one draw) ----------

inline long long sample_permutation_fixed_sum(int n, SplitMix64& rng) {
  std::vector<int> a(static_cast<size_t>(n));
  std::iota(a.begin(), a.end(), 1);
  for (int i = n - 1; i >= 1; --i) {
    const auto j = static_cast<size_t>(uniform_below(rng, static_cast<uint64_t>(i) + 1));
    std::swap(a[static_cast<size_t>(i)], a[j]);
  }
  long long sum = 0;
  for (int i = 0; i < n; ++i)
    if (a[static_cast<size_t>(i)] == i + 1) sum += i + 1;
  return sum;
}

inline long long sample_function_fixed_sum(int n, SplitMix64& rng) {
  long long sum = 0;
  for (int x = 1; x <= n; ++x)
    if (static_cast<int>(uniform_below(rng, static_cast<uint64_t>(n))) + 1 == x) sum += x;
  return sum;
}

inline long long sample_partial_function_fixed_sum(int n, SplitMix64& rng) {
  long long sum = 0;
  for (int x = 1; x <= n; ++x) {
    const auto v = static_cast<int>(uniform_below(rng, static_cast<uint64_t>(n) + 1));
    if (v == 0 || v == x) sum += x;
  }
  return sum;
}

}  // namespace detail

/// A registered labeled-structure family. Exposes exact counts:
///   total(n)                  -- G_n, all structures on [n]
///   fixed_point_free(n)       -- D_n
///   with_fixed_label_set(k,n) -- g(k,n), structures whose fixed-point set is
///                                one given k-subset (the same for every
///                                k-subset, for all nine families)
///   with_fixed_point_count(k,n) -- G_{n,k} = C(n,k) g(k,n)
/// Families are immutable after registration; all counts are pure and their
/// internal sequence caches are mutex-guarded.
class Family {
 public:
  using CountFn = std::function<Count(int)>;
  using PairCountFn = std::function<Count(int, int)>;
  using HistogramFn = std::function<std::map<long long, Count>(int)>;
  using SamplerFn = std::function<long long(int, SplitMix64&)>;

  const std::string& id() const { return id_; }
  const std::string& description() const { return description_; }
  /// True for all nine registered families: g(k,n) depends on K only
  /// through |K|.
  bool g_depends_only_on_k() const { return true; }
  /// Set to C when g(k,n) = C^k * D_{n-k} holds exactly.
  const std::optional<int>& exact_C_decomposable() const { return exact_c_; }
  /// The number of fixed-point types (2 for partial functions, else 1);
  /// used by idealized_fixed_label_set even when the exact factorization
  /// fails.
  int nominal_C() const { return nominal_c_; }
  bool supports_sampling() const { return static_cast<bool>(sampler_); }
  int supports_bruteforce_up_to() const { return bruteforce_max_; }

  Count total(int n) const {
    require_size(n);
    return total_(n);
  }

  Count fixed_point_free(int n) const {
    require_size(n);
    return dfree_(n);
  }

  Count with_fixed_label_set(int k, int n) const {
    require_pair(k, n);
    return g_ ? g_(k, n) : dfree_(n - k);
  }

  Count with_fixed_point_count(int k, int n) const {
    return binomial(n, k) * with_fixed_label_set(k, n);
  }

  /// nominal_C^k * D_{n-k}: the value g(k,n) would take if fixed-point sets
  /// factored into independent per-point choices over a fixed-point-free
  /// rest. Coincides with with_fixed_label_set exactly when
  /// exact_C_decomposable is set; the gap is measurable for the function
  /// families.
  Count idealized_fixed_label_set(int k, int n) const {
    require_pair(k, n);
    return integer_power(nominal_c_, k) * dfree_(n - k);
  }

  /// Histogram of fixed-point label sums by direct enumeration of every
  /// structure. Throws TooLargeError beyond supports_bruteforce_up_to().
  std::map<long long, Count> brute_force_histogram(int n) const {
    require_size(n);
    if (n > bruteforce_max_)
      throw TooLargeError(id_ + ": brute force supported up to n = " +
                          std::to_string(bruteforce_max_));
    return brute_(n);
  }

  long long sample_fixed_point_sum(int n, SplitMix64& rng) const {
    require_size(n);
    if (!sampler_) throw UnsupportedFamilyError(id_);
    return sampler_(n, rng);
  }

  Family(std::string id, std::string description, std::optional<int> exact_c,
         int nominal_c, int bruteforce_max, CountFn total, CountFn dfree,
         HistogramFn brute, SamplerFn sampler = nullptr,
         PairCountFn g = nullptr)
      : id_(std::move(id)),
        description_(std::move(description)),
        exact_c_(exact_c),
        nominal_c_(nominal_c),
        bruteforce_max_(bruteforce_max),
        total_(std::move(total)),
        dfree_(std::move(dfree)),
        g_(std::move(g)),
        brute_(std::move(brute)),
        sampler_(std::move(sampler)) {}

 private:
  void require_size(int n) const {
    if (n < 0) throw std::domain_error(id_ + ": n must be nonnegative");
  }
  void require_pair(int k, int n) const {
    require_size(n);
    if (k < 0 || k > n)
      throw std::domain_error(id_ + ": k must satisfy 0 <= k <= n");
  }

  std::string id_;
  std::string description_;
  std::optional<int> exact_c_;
  int nominal_c_;
  int bruteforce_max_;
  CountFn total_;
  CountFn dfree_;
  PairCountFn g_;
  HistogramFn brute_;
  SamplerFn sampler_;
};

namespace detail {

inline std::vector<Family> build_registry() {
  using std::vector;

  // Shared component-weight generators for the exponential-formula engine.
  auto exp_seq = [](std::function<Count(int)> weight) {
    return make_lazy([weight = std::move(weight)](int n) {
      return exp_formula_counts(ComponentWeights::tabulate(n, weight), n);
    });
  };
  auto parity_seq = [](std::function<Count(int)> weight, bool odd_part) {
    return make_lazy([weight = std::move(weight), odd_part](int n) {
      auto split = parity_split_counts(ComponentWeights::tabulate(n, weight), n);
      return odd_part ? std::move(split.second) : std::move(split.first);
    });
  };

  const auto cycle_weight = [](int m) { return factorial(m - 1); };
  const auto derangement_weight = [](int m) {
    return m >= 2 ? factorial(m - 1) : Count(0);
  };
  const auto odd_cycle_weight = [](int m) {
    return m % 2 == 1 ? factorial(m - 1) : Count(0);
  };
  const auto odd_cycle_no_fix_weight = [](int m) {
    return (m % 2 == 1 && m >= 3) ? factorial(m - 1) : Count(0);
  };

  // Derangements by the classical linear recurrence D_n = n D_{n-1} + (-1)^n.
  // The exponential-formula engine reproduces this sequence (checked in the
  // test suite); the recurrence keeps n ~ 1000 instant.
  auto derangements = make_lazy([](int n) {
    std::vector<Count> d(static_cast<size_t>(n) + 1);
    d[0] = 1;
    for (int i = 1; i <= n; ++i) {
      d[static_cast<size_t>(i)] = i * d[static_cast<size_t>(i - 1)];
      if (i % 2 == 0)
        ++d[static_cast<size_t>(i)];
      else
        --d[static_cast<size_t>(i)];
    }
    return d;
  });
  auto factorials = make_lazy([](int n) {
    std::vector<Count> f(static_cast<size_t>(n) + 1);
    f[0] = 1;
    for (int i = 1; i <= n; ++i) f[static_cast<size_t>(i)] = i * f[static_cast<size_t>(i - 1)];
    return f;
  });

  // Fixed-point-free involutions: perfect matchings, (n-1)!! for even n.
  auto matching_count = [](int n) -> Count {
    if (n % 2 == 1) return 0;
    Count result = 1;
    for (int i = 3; i <= n; i += 2) result *= i;  // 1*3*5*...*(n-1)
    return result;
  };

  auto involution_totals = exp_seq([](int m) { return Count(m <= 2 ? 1 : 0); });
  auto bell = exp_seq([](int) { return Count(1); });
  auto singleton_free_partitions = exp_seq([](int m) { return Count(m >= 2 ? 1 : 0); });
  auto odd_cycle_totals = exp_seq(odd_cycle_weight);
  auto odd_cycle_dfree = exp_seq(odd_cycle_no_fix_weight);
  auto rooted_forest_dfree = exp_seq([](int m) {
    return m >= 2 ? integer_power(m, m - 1) : Count(0);
  });
  auto unrooted_forest_totals = exp_seq([](int m) {
    return m == 1 ? Count(1) : integer_power(m, m - 2);
  });
  auto unrooted_forest_dfree = exp_seq([](int m) {
    return m >= 2 ? integer_power(m, m - 2) : Count(0);
  });

  // Permutations with an odd number of cycles: the derangement part of a
  // structure with |K| = k fixed points must have cycle-count parity opposite
  // to k, so that the whole structure has an odd count.
  auto perm_odd_count = parity_seq(cycle_weight, /*odd_part=*/true);
  auto derangement_even_count = parity_seq(derangement_weight, /*odd_part=*/false);
  auto derangement_odd_count = parity_seq(derangement_weight, /*odd_part=*/true);

  vector<Family> families;

  families.emplace_back(
      "permutations", "permutations of [n]; fixed points are the 1-cycles",
      1, 1, 8,
      [factorials](int n) { return factorials->at(n); },
      [derangements](int n) { return derangements->at(n); },
      [](int n) { return permutation_histogram(n, PermFilter::All); },
      sample_permutation_fixed_sum);

  families.emplace_back(
      "all_functions", "functions [n] -> [n]; x is fixed when f(x) = x",
      std::nullopt, 1, 6,
      [](int n) { return integer_power(n, n); },
      [](int n) { return n == 0 ? Count(1) : integer_power(n - 1, n); },
      [](int n) { return function_histogram(n, /*partial=*/false); },
      sample_function_fixed_sum,
      [](int k, int n) { return integer_power(n - 1, n - k); });

  families.emplace_back(
      "partial_functions",
      "partial functions [n] -> [n]; x is fixed when f(x) = x or undefined",
      std::nullopt, 2, 5,
      [](int n) { return integer_power(n + 1, n); },
      [](int n) { return n == 0 ? Count(1) : integer_power(n - 1, n); },
      [](int n) { return function_histogram(n, /*partial=*/true); },
      sample_partial_function_fixed_sum,
      [](int k, int n) {
        return integer_power(2, k) * integer_power(n - 1, n - k);
      });

  families.emplace_back(
      "involutions", "permutations with every cycle length 1 or 2",
      1, 1, 8,
      [involution_totals](int n) { return involution_totals->at(n); },
      matching_count,
      [](int n) { return permutation_histogram(n, PermFilter::Involution); });

  families.emplace_back(
      "set_partitions", "set partitions of [n]; fixed points are the singleton blocks",
      1, 1, 9,
      [bell](int n) { return bell->at(n); },
      [singleton_free_partitions](int n) { return singleton_free_partitions->at(n); },
      set_partition_histogram);

  families.emplace_back(
      "odd_cycle_permutations", "permutations with every cycle length odd",
      1, 1, 8,
      [odd_cycle_totals](int n) { return odd_cycle_totals->at(n); },
      [odd_cycle_dfree](int n) { return odd_cycle_dfree->at(n); },
      [](int n) { return permutation_histogram(n, PermFilter::OddCycleLengths); });

  families.emplace_back(
      "odd_cycle_count_permutations",
      "permutations with an odd number of cycles",
      std::nullopt, 1, 8,
      [perm_odd_count](int n) { return perm_odd_count->at(n); },
      [derangement_odd_count](int n) { return derangement_odd_count->at(n); },
      [](int n) { return permutation_histogram(n, PermFilter::OddCycleCount); },
      nullptr,
      [derangement_even_count, derangement_odd_count](int k, int n) {
        return k % 2 == 0 ? derangement_odd_count->at(n - k)
                          : derangement_even_count->at(n - k);
      });

  families.emplace_back(
      "rooted_forests",
      "labeled forests of rooted trees; 1-vertex trees are fixed points",
      1, 1, 5,
      [](int n) { return n == 0 ? Count(1) : integer_power(n + 1, n - 1); },
      [rooted_forest_dfree](int n) { return rooted_forest_dfree->at(n); },
      rooted_forest_histogram);

  families.emplace_back(
      "unrooted_forests",
      "labeled forests of unrooted trees; isolated vertices are fixed points",
      1, 1, 5,
      [unrooted_forest_totals](int n) { return unrooted_forest_totals->at(n); },
      [unrooted_forest_dfree](int n) { return unrooted_forest_dfree->at(n); },
      unrooted_forest_histogram);

  return families;
}

}  // namespace detail

/// All registered families in a stable order.
inline const std::vector<Family>& list_families() {
  static const std::vector<Family> registry = detail::build_registry();
  return registry;
}

/// Lookup by stable snake_case id. Throws UnknownFamilyError.
inline const Family& find_family(std::string_view id) {
  for (const Family& f : list_families())
    if (f.id() == id) return f;
  throw UnknownFamilyError(std::string(id));
}

}  // namespace fixsum
