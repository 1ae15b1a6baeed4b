#pragma once

// Deterministic parallel map-reduce over an index range. The range is cut
// into fixed-size chunks regardless of the worker count and partial results
// are combined in chunk order, so the output is identical for any number of
// threads even when `combine` is not associative in floating point.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zol {

inline unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : std::min(hw, 16u);
}

// chunk_fn(begin, end) -> T reduces one chunk; combine(T, T) -> T merges.
// `init` must be an identity for combine.
template <class T, class ChunkFn, class Combine>
T parallel_reduce(std::uint64_t count, T init, ChunkFn chunk_fn, Combine combine, unsigned workers = 0,
                  std::uint64_t chunk = 1 << 12) {
  if (count == 0) return init;
  const std::uint64_t chunks = (count + chunk - 1) / chunk;
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  std::vector<T> partial(chunks, init);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::uint64_t c = next++; c < chunks; c = next++) {
        partial[c] = chunk_fn(c * chunk, std::min(count, (c + 1) * chunk));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = chunks;
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  T acc = init;
  for (auto& p : partial) acc = combine(std::move(acc), std::move(p));
  return acc;
}

}  // namespace zol
