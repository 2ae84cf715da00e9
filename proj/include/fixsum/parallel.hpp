#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace fixsum {

/// Worker cap for internal parallel sections. FIXSUM_THREADS=0 or unset means
/// one worker per hardware thread.
inline int thread_budget() {
  int budget = 0;
  if (const char* env = std::getenv("FIXSUM_THREADS")) {
    budget = std::atoi(env);
  }
  if (budget <= 0) {
    budget = static_cast<int>(std::thread::hardware_concurrency());
  }
  return std::max(budget, 1);
}

/// Runs fn(lo, hi) over a partition of [begin, end). Chunks are contiguous and
/// assigned deterministically; fn must only touch state it owns per chunk.
template <typename Fn>
void parallel_chunks(long long begin, long long end, Fn&& fn) {
  const long long total = end - begin;
  if (total <= 0) return;
  const int workers =
      static_cast<int>(std::min<long long>(thread_budget(), total));
  if (workers <= 1) {
    fn(begin, end);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const long long step = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long long lo = begin + step * w;
    const long long hi = std::min(end, lo + step);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace fixsum
