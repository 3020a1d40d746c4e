#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace ektau {

inline int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  int n = hw ? static_cast<int>(hw) : 1;
  if (const char* env = std::getenv("EKTAU_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0 && cap < n) n = cap;
  }
  return n;
}

// Write-once-per-index parallel loop; deterministic because each index owns
// its slot regardless of scheduling.
template <class F>
void parallel_for(int n, F body) {
  int workers = thread_budget();
  if (workers <= 1 || n < 4) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    int lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ektau
