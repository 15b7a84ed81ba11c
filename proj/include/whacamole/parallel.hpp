#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace whacamole {

/// Runs fn(worker, index) for index in [0, count) on up to `jobs` threads.
/// Work is handed out by an atomic counter; the first exception is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(std::size_t{0}, i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(w, i);
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (!err) err = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace whacamole
