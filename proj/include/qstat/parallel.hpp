#ifndef QSTAT_PARALLEL_HPP
#define QSTAT_PARALLEL_HPP

#include <cstdlib>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

namespace qstat {

// Worker count: hardware concurrency, optionally capped by QSTAT_THREADS.
inline unsigned thread_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("QSTAT_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
  }
  return n;
}

// Runs f(i) for i in [0, n). Results must be written to per-index slots so
// the outcome is independent of the partitioning.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const unsigned workers = thread_count();
  if (workers <= 1 || n < 2 * workers) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&f, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace qstat

#endif  // QSTAT_PARALLEL_HPP
