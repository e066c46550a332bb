#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace phrmt {

/// Number of workers to use when the caller passes 0.
inline unsigned default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

/// Realizations per chunk in ensemble loops. Each chunk owns one random
/// stream, so results depend on the chunk layout and never on the thread
/// count.
inline constexpr std::size_t kRealizationsPerChunk = 1024;

inline std::size_t chunk_count(std::size_t realizations) {
  return (realizations + kRealizationsPerChunk - 1) / kRealizationsPerChunk;
}

/// Calls fn(chunk) for chunk = 0..chunks-1 on up to `threads` workers.
/// The first exception thrown by any worker is rethrown on the caller.
template <typename Fn>
void parallel_for_chunks(std::size_t chunks, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(chunks, 1)));
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= chunks) return;
        try {
          fn(c);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(chunks);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace phrmt
