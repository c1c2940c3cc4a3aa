#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace lcpatlas {

/// Worker cap: min(hardware_concurrency, LCP_ATLAS_THREADS). Values < 1 in
/// the environment variable are treated as 1.
inline int max_threads() {
  static const int cached = [] {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("LCP_ATLAS_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && v >= 1 && v < 1024) hw = std::min<long>(hw, v);
      else if (end != env && v < 1) hw = 1;
    }
    return hw;
  }();
  return cached;
}

/// Runs fn(i) for i in [0, count). Splits into contiguous chunks across
/// threads; results must be written to per-index slots so the output is
/// independent of the schedule. Runs serially for small counts.
template <typename Fn>
void parallel_for(int count, Fn&& fn, int grain = 256) {
  const int workers = std::min(max_threads(), std::max(1, count / std::max(1, grain)));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const int chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace lcpatlas
