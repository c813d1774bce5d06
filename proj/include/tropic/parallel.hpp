#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace tropic {

// Worker count from TROPIC_THREADS, clamped to the hardware; unset, empty or
// invalid means single-threaded.
inline int thread_count() {
  const char* env = std::getenv("TROPIC_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  if (n < 1) return 1;
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw > 0 && n > static_cast<int>(hw)) return static_cast<int>(hw);
  return n;
}

// Runs fn(i) for i in [0, count) on the configured workers. Callers must
// write results into index-addressed slots so the outcome does not depend on
// the thread count. The lowest-index exception, if any, is rethrown.
inline void parallel_for(int count, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  const int workers = std::min(thread_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace tropic
