#pragma once
#include <cstddef>
#include <vector>

#ifdef HYMEM_HAVE_OPENMP
#include <omp.h>
#endif

namespace hymem::par {

enum class Mode { serial, openmp };

// Process-wide execution mode for the checker kernels. The serial path is the
// reference implementation; tests compare both, the benchmark times both.
inline Mode& mode() {
#ifdef HYMEM_HAVE_OPENMP
  static Mode m = Mode::openmp;
#else
  static Mode m = Mode::serial;
#endif
  return m;
}

template <class F>
void for_each_index(std::size_t n, F&& body, Mode m) {
#ifdef HYMEM_HAVE_OPENMP
  if (m == Mode::openmp) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)m;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

template <class F>
void for_each_index(std::size_t n, F&& body) {
  for_each_index(n, static_cast<F&&>(body), mode());
}

// Max-reduction over f(0..n-1). fp-max is exact, so both modes agree bitwise.
template <class F>
double max_reduce(std::size_t n, double init, F&& f, Mode m) {
  double result = init;
#ifdef HYMEM_HAVE_OPENMP
  if (m == Mode::openmp) {
#pragma omp parallel for schedule(static) reduction(max : result)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      const double v = f(static_cast<std::size_t>(i));
      if (v > result) result = v;
    }
    return result;
  }
#else
  (void)m;
#endif
  for (std::size_t i = 0; i < n; ++i) {
    const double v = f(i);
    if (v > result) result = v;
  }
  return result;
}

template <class F>
double max_reduce(std::size_t n, double init, F&& f) {
  return max_reduce(n, init, static_cast<F&&>(f), mode());
}

}  // namespace hymem::par
