#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace fup::detail {

/* Runs fn(begin, end) over a fixed contiguous partition of [0, n). The
 * partition depends only on (n, threads), so any output written per index
 * is identical for every thread count. */
inline void parallel_for(long long n, int threads, const std::function<void(long long, long long)>& fn) {
  if (n <= 0) return;
  if (threads < 1) threads = 1;
  const long long parts = std::min<long long>(threads, n);
  if (parts == 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(parts));
  const long long chunk = (n + parts - 1) / parts;
  for (long long p = 0; p < parts; ++p) {
    const long long begin = p * chunk;
    const long long end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace fup::detail
