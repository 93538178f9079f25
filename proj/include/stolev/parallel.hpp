#pragma once

#include <cstddef>
#include <span>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace stolev::par {

inline int resolve_workers(int requested) {
#if defined(_OPENMP)
  if (requested <= 0) return omp_get_max_threads();
  return requested;
#else
  (void)requested;
  return 1;
#endif
}

// Index-slotted parallel loop. Each iteration owns its index; results must
// be written into per-index slots so the outcome is independent of the
// number of workers.
template <class Fn>
void for_index(std::size_t n, int workers, Fn&& fn) {
  const int w = resolve_workers(workers);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(w)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    fn(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

inline constexpr std::size_t kSumBlock = 4096;

// Deterministic sum: fixed-size blocks are reduced independently (possibly
// in parallel) and the block totals are added left to right. The result is
// identical for every worker count.
template <class Fn>
double block_sum(std::size_t n, int workers, Fn&& term) {
  const std::size_t n_blocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> partial(n_blocks, 0.0);
  for_index(n_blocks, workers, [&](std::size_t b) {
    const std::size_t lo = b * kSumBlock;
    const std::size_t hi = std::min(n, lo + kSumBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[b] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

inline double block_sum(std::span<const double> xs, int workers = 1) {
  return block_sum(xs.size(), workers, [&](std::size_t i) { return xs[i]; });
}

}  // namespace stolev::par
