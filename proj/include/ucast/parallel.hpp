#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ucast {

// Resolves a worker-count request: 0 means all hardware threads, anything
// else is taken literally. Builds without OpenMP always run serially.
inline int effective_workers(int requested) {
#ifdef _OPENMP
  return requested <= 0 ? omp_get_max_threads() : requested;
#else
  (void)requested;
  return 1;
#endif
}

// Runs body(i) for i in [0, n). workers == 1 takes the plain serial loop,
// which doubles as the reference implementation the parallel path is tested
// against. Iterations must be independent; the first exception thrown by any
// iteration is rethrown after the loop completes.
template <class Body>
void parallel_for(std::size_t n, int workers, Body&& body) {
  const int w = effective_workers(workers);
  if (w <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(w)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(ucast_parallel_for_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
#else
  for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace ucast
