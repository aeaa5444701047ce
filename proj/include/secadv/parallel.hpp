#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace secadv {

// Samples are processed in fixed-size chunks; chunk k always covers
// [k * kChunkSize, (k + 1) * kChunkSize) and is seeded from substream k.
inline constexpr std::size_t kChunkSize = 4096;

inline unsigned default_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Evaluates fn(chunk_index, begin, end) for every chunk of [0, count) on up
// to `workers` threads and returns the per-chunk results in chunk order.
// Callers fold the result vector sequentially, so floating-point sums are
// identical for any worker count.
template <class Result, class Fn>
std::vector<Result> map_chunks(std::size_t count, unsigned workers, Fn&& fn) {
  const std::size_t chunks = (count + kChunkSize - 1) / kChunkSize;
  std::vector<Result> results(chunks);
  if (chunks == 0) return results;

  auto run_one = [&](std::size_t k) {
    const std::size_t begin = k * kChunkSize;
    const std::size_t end = std::min(count, begin + kChunkSize);
    results[k] = fn(k, begin, end);
  };

  const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), chunks);
  if (threads == 1) {
    for (std::size_t k = 0; k < chunks; ++k) run_one(k);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < chunks; k = next++) {
        try {
          run_one(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace secadv
