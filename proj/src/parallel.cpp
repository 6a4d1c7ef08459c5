#include "geomed/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace geomed::par {

namespace {

std::atomic<int> g_cap{0};

int env_cap() {
  static const int cached = [] {
    const char* v = std::getenv("GEOMED_THREADS");
    if (!v) return 0;
    const int k = std::atoi(v);
    return k > 0 ? k : 0;
  }();
  return cached;
}

}  // namespace

void set_thread_cap(int cap) { g_cap.store(cap > 0 ? cap : 0); }

int thread_count() {
  int tc = omp_get_max_threads();
  if (const int e = env_cap(); e > 0 && e < tc) tc = e;
  if (const int c = g_cap.load(); c > 0 && c < tc) tc = c;
  return tc < 1 ? 1 : tc;
}

}  // namespace geomed::par
