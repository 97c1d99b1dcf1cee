#include "aal/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aal {

namespace {
std::atomic<int> g_override{0};

int env_threads() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("AAL_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0 && cap < n) n = cap;
  }
  return n < 1 ? 1 : n;
#else
  return 1;
#endif
}
}  // namespace

int thread_count() {
  int o = g_override.load(std::memory_order_relaxed);
  if (o > 0) return o;
  static int n = env_threads();
  return n;
}

void set_thread_count(int n) { g_override.store(n, std::memory_order_relaxed); }

namespace detail {

double chunked_sum(std::size_t n, double (*eval)(const void*, std::size_t), const void* ctx) {
  constexpr std::size_t chunk = 4096;
  std::size_t chunks = (n + chunk - 1) / chunk;
  if (chunks <= 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += eval(ctx, i);
    return s;
  }
  std::vector<double> partial(chunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
  for (std::ptrdiff_t c = 0; c < (std::ptrdiff_t)chunks; ++c) {
    std::size_t lo = (std::size_t)c * chunk;
    std::size_t hi = lo + chunk < n ? lo + chunk : n;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += eval(ctx, i);
    partial[(std::size_t)c] = s;
  }
  double s = 0.0;
  for (double p : partial) s += p;  // fixed combine order
  return s;
}

}  // namespace detail

}  // namespace aal
