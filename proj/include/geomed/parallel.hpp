#pragma once

#include <cstddef>

#include <omp.h>

namespace geomed::par {

// Points are reduced in fixed-size blocks; block partials are combined in
// block order, so results are identical for any thread count.
inline constexpr std::size_t kBlock = 1024;

// Kernel parallelism kicks in above this point count; below it the blocked
// path runs serially (same arithmetic either way).
inline constexpr std::size_t kParallelThreshold = 2048;

// Effective thread cap: min(OpenMP max, GEOMED_THREADS, programmatic cap).
int thread_count();

// Programmatic override (0 = use env/OpenMP default). Used by the bench
// harness to pin scaling measurements to one thread.
void set_thread_cap(int cap);

inline std::size_t num_blocks(std::size_t n) { return (n + kBlock - 1) / kBlock; }

// fn(block, lo, hi): blocks may execute concurrently; each block is serial.
template <class Fn>
void for_blocks(std::size_t n, Fn&& fn) {
  const std::size_t nb = num_blocks(n);
  const int tc = thread_count();
  if (n >= kParallelThreshold && tc > 1 && !omp_in_parallel()) {
#pragma omp parallel for schedule(static) num_threads(tc)
    for (long long b = 0; b < static_cast<long long>(nb); ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
      const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
      fn(static_cast<std::size_t>(b), lo, hi);
    }
  } else {
    for (std::size_t b = 0; b < nb; ++b) {
      const std::size_t lo = b * kBlock;
      const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
      fn(b, lo, hi);
    }
  }
}

}  // namespace geomed::par
