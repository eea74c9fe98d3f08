#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace coendo {

/// Enumeration limits and worker count shared by the computational modules.
struct Caps {
  std::size_t weyl = 1'000'000;
  std::size_t points = 1'000'000;
  std::size_t tuples = 1'000'000;
  int threads = 1;
};

/// Runs fn(i) for i in [0, n) over `threads` workers. fn must only write to
/// slots owned by i, so results are independent of scheduling.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(threads < 1 ? 1 : threads, 1, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace coendo
