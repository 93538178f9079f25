#include "stolev/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stolev/parallel.hpp"
#include "stolev/rng.hpp"

namespace stolev {

std::pair<SolutionPath, SolutionPath> pointwise_min_max(const SolutionPath& sol1,
                                                        const SolutionPath& sol2) {
  if (sol1.grid.n_steps != sol2.grid.n_steps ||
      sol1.grid.horizon != sol2.grid.horizon)
    throw std::invalid_argument("pointwise_min_max: grid mismatch");
  SolutionPath lo = sol1;
  SolutionPath hi = sol1;
  lo.provenance = Provenance::injected;
  hi.provenance = Provenance::injected;
  for (std::size_t k = 0; k < sol1.values.size(); ++k) {
    lo.values[k] = std::min(sol1.values[k], sol2.values[k]);
    hi.values[k] = std::max(sol1.values[k], sol2.values[k]);
  }
  lo.x0 = lo.values[0];
  hi.x0 = hi.values[0];
  return {std::move(lo), std::move(hi)};
}

LatticeReport lattice_check(const SolutionPath& sol1, const SolutionPath& sol2,
                            const DriftSpec& drift, const LevyPath& path,
                            double safety_factor) {
  const auto bound = drift.analytic_bound() ? drift.analytic_bound()
                                            : drift.declared_bound;
  if (!bound)
    throw std::invalid_argument("lattice_check: drift has no declared bound");
  LatticeReport report;
  report.residual_1 = integral_residual(sol1, drift, path);
  report.residual_2 = integral_residual(sol2, drift, path);
  const auto [lo, hi] = pointwise_min_max(sol1, sol2);
  report.residual_min = integral_residual(lo, drift, path);
  report.residual_max = integral_residual(hi, drift, path);
  for (std::size_t k = 1; k < sol1.values.size(); ++k) {
    const double before = sol1.values[k - 1] - sol2.values[k - 1];
    const double after = sol1.values[k] - sol2.values[k];
    if ((before < 0.0 && after > 0.0) || (before > 0.0 && after < 0.0))
      ++report.crossings;
  }
  report.tolerance_used =
      safety_factor *
      (report.residual_1 + report.residual_2 + 2.0 * *bound * path.grid.dt());
  report.pass = report.residual_min <= report.tolerance_used &&
                report.residual_max <= report.tolerance_used;
  return report;
}

std::vector<DecayRow> uniqueness_probe(double x0, const DriftSpec& drift,
                                       const StableParams& params, double horizon,
                                       std::span<const std::size_t> level_steps,
                                       std::size_t n_paths, std::uint64_t master_seed,
                                       int workers) {
  if (level_steps.empty())
    throw std::invalid_argument("uniqueness_probe: no grid levels");
  const std::size_t finest = *std::max_element(level_steps.begin(), level_steps.end());
  for (std::size_t n : level_steps)
    if (n == 0 || finest % n != 0)
      throw std::invalid_argument("uniqueness_probe: levels must divide the finest grid");
  std::vector<std::vector<double>> distances(level_steps.size(),
                                             std::vector<double>(n_paths));
  par::for_index(n_paths, workers, [&](std::size_t p) {
    const LevyPath fine = simulate_path(params, PathGrid{horizon, finest},
                                        rng::derive_seed(master_seed, p));
    for (std::size_t lev = 0; lev < level_steps.size(); ++lev) {
      const LevyPath grid_path = restrict_path(fine, finest / level_steps[lev]);
      const SolutionPath a = euler_solve(x0, drift, grid_path);
      const SolutionPath b = euler_solve_midpoint(x0, drift, grid_path);
      distances[lev][p] = sup_distance_shared(a, b);
    }
  });
  std::vector<DecayRow> rows(level_steps.size());
  for (std::size_t lev = 0; lev < level_steps.size(); ++lev) {
    rows[lev].n_steps = level_steps[lev];
    rows[lev].median = median_of(distances[lev]);
    rows[lev].q1 = quantile_of(distances[lev], 0.25);
    rows[lev].q3 = quantile_of(distances[lev], 0.75);
  }
  return rows;
}

}  // namespace stolev
