#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace locallim {

/// LOCALLIM_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
inline int worker_count() {
  if (const char* env = std::getenv("LOCALLIM_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on a pool of workers. Results must be
/// written per index by the caller; the schedule never affects them. If any
/// call throws, the exception of the smallest failing index is rethrown.
template <class Body>
void parallel_for(std::int64_t count, Body&& body) {
  if (count <= 0) return;
  const auto workers = static_cast<int>(std::min<std::int64_t>(worker_count(), count));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::mutex mu;
  std::int64_t failed_at = std::numeric_limits<std::int64_t>::max();
  std::exception_ptr failure;
  auto work = [&] {
    for (;;) {
      std::int64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace locallim
