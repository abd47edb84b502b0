#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace qcrib {

/// Global switch for fanning independent check units out over threads.
/// Results are always collected per unit index and merged in canonical
/// order, so the setting never changes any output.
void set_parallel(bool on);
bool parallel_enabled();

/// Runs fn(i) for i in [0, n). fn must only write to its own slot.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  if (!parallel_enabled() || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(std::thread::hardware_concurrency(), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace qcrib
