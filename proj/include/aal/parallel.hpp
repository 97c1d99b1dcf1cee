#pragma once

#include <cstddef>
#include <vector>

namespace aal {

/// Number of threads the parallel kernels may use. Honors the AAL_THREADS
/// environment variable (read once) and set_thread_count overrides; 1 when
/// built without OpenMP.
int thread_count();

/// Programmatic override (used by the benchmark to sweep thread counts).
/// n <= 0 restores the environment-derived default.
void set_thread_count(int n);

/// Sum fn(i) for i in [0, n) with a fixed chunk decomposition: chunk partials
/// may be computed in parallel but are combined serially in index order, so
/// the result is bit-identical for every thread count.
template <class F>
double deterministic_sum(std::size_t n, F&& fn);

namespace detail {
double chunked_sum(std::size_t n, double (*eval)(const void*, std::size_t), const void* ctx);
}

template <class F>
double deterministic_sum(std::size_t n, F&& fn) {
  struct Ctx {
    const F* f;
  } ctx{&fn};
  return detail::chunked_sum(
      n, [](const void* c, std::size_t i) { return (*static_cast<const Ctx*>(c)->f)(i); }, &ctx);
}

}  // namespace aal
