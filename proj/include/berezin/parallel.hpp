#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace berezin {

/// Worker count from BEREZIN_LAB_THREADS (default 1). Never affects results.
inline unsigned thread_count() {
  const char* env = std::getenv("BEREZIN_LAB_THREADS");
  if (env == nullptr) return 1;
  try {
    const long n = std::stol(env);
    return n >= 1 ? static_cast<unsigned>(std::min<long>(n, 256)) : 1u;
  } catch (...) {
    return 1;
  }
}

/**
 * Runs body(i) for i in [0, n). Each index writes only its own output slot,
 * so results are independent of the worker count; reductions happen after
 * the loop in index order.
 */
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  const unsigned workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &body, &error = errors[w]] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace berezin
