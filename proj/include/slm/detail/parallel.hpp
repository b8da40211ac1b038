#ifndef SLM_DETAIL_PARALLEL_HPP
#define SLM_DETAIL_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace slm::detail {

// Runs fn(i) for i in [0, count) on up to `workers` threads. fn must not throw.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace slm::detail

#endif  // SLM_DETAIL_PARALLEL_HPP
