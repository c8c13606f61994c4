#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace polycurve {

/// Worker count for data-parallel sweeps, capped by POLYCURVE_THREADS.
inline int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("POLYCURVE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return std::max(1, n);
}

/// Run fn(i) for i in [0, count). Each index writes only its own output slot,
/// so results are deterministic regardless of scheduling.
template <typename Fn>
void parallel_for(long count, Fn&& fn) {
  const int workers = std::min<long>(worker_count(), count) > 0
                          ? static_cast<int>(std::min<long>(worker_count(), count))
                          : 1;
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace polycurve
