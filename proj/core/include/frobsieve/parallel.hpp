#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace frobsieve {

inline unsigned default_thread_count() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Splits [0, count) into one contiguous chunk per worker and runs
// fn(begin, end) on each.  Chunks are disjoint, so results are bitwise
// reproducible for any thread count as long as fn only writes to
// per-index state.  The first exception thrown by a worker is rethrown.
template <typename Fn>
void parallel_for(uint64_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    fn(uint64_t{0}, count);
    return;
  }
  unsigned workers = static_cast<unsigned>(std::min<uint64_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  uint64_t chunk = count / workers;
  uint64_t rem = count % workers;
  uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    uint64_t end = begin + chunk + (w < rem ? 1 : 0);
    pool.emplace_back([&fn, &first_error, &error_mutex, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace frobsieve
