#pragma once

// Deterministic parallel evaluation of independent indexed work items.

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

#include "nfv/mp.hpp"

namespace nfv::detail {

// out[i] = f(first + i) for i in [0, count); each call sets its own working precision.
// The first failure by index is rethrown, so errors do not depend on scheduling.
template <class T, class F>
std::vector<T> parallel_map(long first, long count, int jobs, F&& f) {
  std::vector<T> out(static_cast<std::size_t>(std::max(0L, count)));
  if (count <= 0) return out;
  std::vector<std::exception_ptr> errors(out.size());
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        out[static_cast<std::size_t>(i)] = f(first + i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const long workers = std::clamp<long>(jobs, 1, count);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (long w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class F>
std::vector<Complex> parallel_terms(long first, long count, int jobs, F&& f) {
  return parallel_map<Complex>(first, count, jobs, std::forward<F>(f));
}

}  // namespace nfv::detail
