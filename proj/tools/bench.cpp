// Compares the serial and OpenMP versions of the hot kernels: Monte Carlo
// path solving (stability-style workload) and kernel density evaluation.
#include <chrono>
#include <cstdio>
#include <vector>

#include "stolev/density.hpp"
#include "stolev/parallel.hpp"
#include "stolev/stability.hpp"

using clock_type = std::chrono::steady_clock;

static double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

int main() {
  using namespace stolev;
  const int max_workers = par::resolve_workers(0);

  StabilitySpec spec;
  spec.xs = InitialSequence::harmonic(0.0, 1.0);
  spec.drifts = DriftSequence::mollified_sign_family();
  spec.params = {1.5, 1.0};
  spec.epsilons = {0.25};
  spec.indices = {2, 8, 32, 128};
  spec.n_paths = 500;
  spec.finest_n = 4096;
  spec.master_seed = 7;

  std::printf("kernel               workers  seconds\n");
  for (int w : {1, max_workers}) {
    const auto start = clock_type::now();
    const auto report = run_stability(spec, w);
    std::printf("stability MC         %7d  %.3f   (cells %zu)\n", w,
                seconds_since(start), report.cells.size());
    if (max_workers == 1) break;
  }

  const auto samples = sample_marginal({1.5, 1.0}, 1.0, 500000, 11, max_workers);
  const auto grid = make_uniform_grid(-20.0, 20.0, 2001);
  for (int w : {1, max_workers}) {
    const auto start = clock_type::now();
    const auto est = kde(samples, 1.0, 0.0, grid, 0.0, w);
    std::printf("windowed KDE         %7d  %.3f   (bandwidth %.4f)\n", w,
                seconds_since(start), est.bandwidth);
    if (max_workers == 1) break;
  }
  {
    const auto start = clock_type::now();
    const auto est = kde_reference(samples, 1.0, 0.0, grid, 0.0);
    std::printf("reference KDE        %7d  %.3f\n", 1, seconds_since(start));
    (void)est;
  }
  for (int w : {1, max_workers}) {
    const auto start = clock_type::now();
    const auto oracle = stable_density_oracle({1.5, 1.0}, 1.0, grid, w);
    std::printf("Fourier inversion    %7d  %.3f   (p(0) %.6f)\n", w,
                seconds_since(start), oracle[grid.size() / 2]);
    if (max_workers == 1) break;
  }
  return 0;
}
