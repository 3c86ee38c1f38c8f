#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace sympar {

// Applies fn(i) for i in [0, n) on up to `jobs` worker threads and collects
// the results in index order, so callers stay deterministic regardless of
// scheduling.  The first exception thrown by fn is rethrown after all
// workers finish.  jobs <= 1 runs inline.
template <typename T>
std::vector<T> parallel_map(std::size_t n, int jobs,
                            const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::size_t n_threads =
      std::min(static_cast<std::size_t>(jobs), n);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(error);
  return out;
}

}  // namespace sympar
