#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace cavityhom {

// Resolve a worker count: explicit request > CAVITY_HOM_THREADS > hardware.
inline unsigned resolve_threads(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CAVITY_HOM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Static strided map over [0, count). Each index must write only its own
// output slot; results are then identical for any worker count.
template <typename F>
void parallel_for(std::size_t count, F&& body, unsigned n_threads = 0) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(n_threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace cavityhom
