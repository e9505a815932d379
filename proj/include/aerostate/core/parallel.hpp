#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace aerostate {

/// Worker cap for particle loops, from AEROSTATE_THREADS. 0 means serial;
/// unset means the hardware concurrency.
inline std::size_t particle_threads() {
  if (const char* env = std::getenv("AEROSTATE_THREADS")) {
    try {
      const long v = std::stol(env);
      return v > 0 ? static_cast<std::size_t>(v) : 0;
    } catch (const std::exception&) {
      return 0;
    }
  }
  return std::thread::hardware_concurrency();
}

/// Runs body(i) for i in [0, n). Iterations must be independent. Work is split
/// into contiguous chunks, one per worker; the first exception is rethrown.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::min(particle_threads(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace aerostate
