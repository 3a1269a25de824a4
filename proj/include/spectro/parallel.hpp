#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spectro {

/// Worker count to use: `requested` if nonzero, otherwise the hardware
/// concurrency, and never more than `jobs`.
inline std::size_t resolve_workers(std::size_t requested, std::size_t jobs) {
  std::size_t w = requested;
  if (w == 0) w = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(w, jobs));
}

/// Calls body(i) for i in [0, n) on a pool of threads. Each index is
/// processed exactly once; results must be written to per-index slots so
/// the outcome does not depend on scheduling. The exception thrown for the
/// lowest failing index is rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t n, std::size_t workers, Body&& body) {
  if (n == 0) return;
  const std::size_t w = resolve_workers(workers, n);
  if (w == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex guard;
  std::size_t failed_index = n;
  std::exception_ptr failure;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::size_t k = 0; k < w; ++k) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace spectro
