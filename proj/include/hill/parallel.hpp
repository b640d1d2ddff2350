#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hill {

// Worker cap from HILL_SPECTRA_THREADS, defaulting to the hardware count.
inline int worker_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("HILL_SPECTRA_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<int>(std::min<long>(v, hw));
  }
  return static_cast<int>(hw);
}

// Runs fn(0..count-1); items must write only to their own slots, which keeps
// results identical for every thread count.
template <typename Fn>
void parallel_for_index(int count, Fn&& fn) {
  int workers = std::min(worker_threads(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex err_mtx;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mtx);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hill
