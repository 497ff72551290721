#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace nonlocal {

/// Worker count: hardware concurrency, capped by NONLOCAL_LAB_THREADS when set
/// to a positive integer. Always at least 1.
unsigned worker_count();

/// Runs body(i) for i in [0, count) across `workers` threads. Work is
/// handed out in index chunks; callers write results into per-index slots and
/// reduce afterwards, so output does not depend on the schedule. The first
/// exception thrown by any body is rethrown on the calling thread.
template <class Body>
void parallel_for(unsigned workers, std::size_t count, Body&& body) {
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  constexpr std::size_t kChunk = 64;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      while (true) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= count) break;
        const std::size_t end = begin + kChunk < count ? begin + kChunk : count;
        for (std::size_t i = begin; i < end; ++i) body(i);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(count);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  parallel_for(worker_count(), count, std::forward<Body>(body));
}

}  // namespace nonlocal
