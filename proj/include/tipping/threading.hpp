#ifndef TIPPING_THREADING_HPP
#define TIPPING_THREADING_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace tipping {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs task(i) for i in [0, n). Work is pulled from a shared counter, so
// callers must not rely on any particular assignment of indices to threads.
// The first exception thrown by a task is rethrown on the calling thread.
inline void parallel_for(long n, int threads,
                         const std::function<void(long)>& task) {
  threads = std::min<long>(resolve_threads(threads), n);
  if (threads <= 1) {
    for (long i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<long> next(0);
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      long i = next.fetch_add(1);
      if (i >= n) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace tipping

#endif
