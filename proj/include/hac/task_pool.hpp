#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace hac {

// Runs fn(i) for i in [0, count) on up to `workers` threads. Tasks must be
// independent; results keyed by index make the output schedule-independent.
inline void parallel_for(int workers, int count, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  if (workers <= 1 || count == 1) {
    for (int i = 0; i < count; i++) fn(i);
    return;
  }
  int nthreads = std::min(workers, count);
  std::atomic<int> next{0};
  std::vector<std::thread> threads;
  threads.reserve(nthreads);
  std::exception_ptr error = nullptr;
  std::atomic<bool> failed{false};
  for (int t = 0; t < nthreads; t++) {
    threads.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hac
