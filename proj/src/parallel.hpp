#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hc {

// Static-partition parallel loop. Each worker owns a contiguous slice of
// [0, count), so results written by index are identical for every worker
// count. Exceptions from workers are rethrown on the calling thread.
inline void parallel_for(std::size_t count, int workers,
                         const std::function<void(std::size_t, std::size_t)>& run_range) {
  if (count == 0) return;
  if (workers < 1) workers = 1;
  std::size_t w = static_cast<std::size_t>(workers);
  if (w > count) w = count;
  if (w == 1) {
    run_range(0, count);
    return;
  }

  std::vector<std::thread> threads;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::size_t chunk = count / w;
  std::size_t rem = count % w;
  std::size_t begin = 0;
  for (std::size_t t = 0; t < w; ++t) {
    std::size_t len = chunk + (t < rem ? 1 : 0);
    std::size_t end = begin + len;
    threads.emplace_back([&, begin, end] {
      try {
        run_range(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hc
