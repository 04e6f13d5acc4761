#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace polaron {

/// Worker count for data-parallel loops. POLARON_THREADS caps it; unset or
/// invalid means one worker per hardware thread.
inline int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("POLARON_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) return static_cast<int>(std::min<long>(cap, hw));
  }
  return hw;
}

/// out[i] = f(i) for i in [0, n). Each entry is computed by exactly one
/// worker, so the result does not depend on the worker count; callers reduce
/// `out` sequentially.
template <typename F>
std::vector<double> parallel_map(int n, F&& f) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const int workers = std::min(worker_count(), std::max(n, 1));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) out[i] = f(i);
    });
  }
  return out;
}

}  // namespace polaron
