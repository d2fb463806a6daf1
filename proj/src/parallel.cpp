#include "fraclap/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace fraclap {

int worker_count() {
  static int cached = [] {
    const char* env = std::getenv("FRACLAP_THREADS");
    int k = env ? std::atoi(env) : 0;
    if (k <= 0) k = static_cast<int>(std::thread::hardware_concurrency());
    if (k <= 0) k = 1;
    return k;
  }();
  return cached;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  int workers = worker_count();
  if (workers <= 1 || n < 8) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  workers = std::min<int>(workers, static_cast<int>(n));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failed.load() && err) std::rethrow_exception(err);
}

}  // namespace fraclap
