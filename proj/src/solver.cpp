#include "stolev/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stolev/parallel.hpp"
#include "stolev/report.hpp"
#include "stolev/rng.hpp"

namespace stolev {

namespace {

void check_finite(double v, std::size_t step) {
  if (!std::isfinite(v))
    throw std::runtime_error("euler_solve: non-finite state at step " +
                             std::to_string(step));
}

}  // namespace

SolutionPath euler_solve(double x0, const DriftSpec& drift, const LevyPath& path) {
  drift.validate();
  SolutionPath sol;
  sol.grid = path.grid;
  sol.x0 = x0;
  sol.drift = drift;
  sol.noise_seed = path.seed;
  sol.provenance = Provenance::euler;
  sol.values.resize(path.values.size());
  const double dt = path.grid.dt();
  double accum = 0.0;  // running drift sum, left to right
  sol.values[0] = x0;
  for (std::size_t k = 0; k < path.grid.n_steps; ++k) {
    const double a = evaluate_drift(drift, sol.values[k]);
    check_finite(a, k);
    accum += a * dt;
    sol.values[k + 1] = (x0 + accum) + path.values[k + 1];
    check_finite(sol.values[k + 1], k + 1);
  }
  return sol;
}

SolutionPath euler_solve_midpoint(double x0, const DriftSpec& drift,
                                  const LevyPath& path) {
  drift.validate();
  SolutionPath sol;
  sol.grid = path.grid;
  sol.x0 = x0;
  sol.drift = drift;
  sol.noise_seed = path.seed;
  sol.provenance = Provenance::euler;
  sol.values.resize(path.values.size());
  const double dt = path.grid.dt();
  double accum = 0.0;
  sol.values[0] = x0;
  for (std::size_t k = 0; k < path.grid.n_steps; ++k) {
    const double a0 = evaluate_drift(drift, sol.values[k]);
    const double predictor =
        sol.values[k] + 0.5 * a0 * dt + 0.5 * path.increment(k);
    const double a = evaluate_drift(drift, predictor);
    check_finite(a, k);
    accum += a * dt;
    sol.values[k + 1] = (x0 + accum) + path.values[k + 1];
    check_finite(sol.values[k + 1], k + 1);
  }
  return sol;
}

double integral_residual(const SolutionPath& candidate, const DriftSpec& drift,
                         const LevyPath& path) {
  if (candidate.grid.n_steps != path.grid.n_steps ||
      candidate.grid.horizon != path.grid.horizon)
    throw std::invalid_argument("integral_residual: grid mismatch");
  const double dt = path.grid.dt();
  const double x0 = candidate.values[0];
  double accum = 0.0;
  double worst = 0.0;
  for (std::size_t k = 1; k <= path.grid.n_steps; ++k) {
    accum += evaluate_drift(drift, candidate.values[k - 1]) * dt;
    const double rhs = (x0 + accum) + path.values[k];
    worst = std::max(worst, std::abs(candidate.values[k] - rhs));
  }
  return worst;
}

double sup_distance_shared(const SolutionPath& a, const SolutionPath& b) {
  const SolutionPath& coarse = a.grid.n_steps <= b.grid.n_steps ? a : b;
  const SolutionPath& fine = a.grid.n_steps <= b.grid.n_steps ? b : a;
  if (fine.grid.n_steps % coarse.grid.n_steps != 0)
    throw std::invalid_argument("sup_distance_shared: grids not nested");
  const std::size_t factor = fine.grid.n_steps / coarse.grid.n_steps;
  double worst = 0.0;
  for (std::size_t k = 0; k <= coarse.grid.n_steps; ++k)
    worst = std::max(worst, std::abs(coarse.values[k] - fine.values[k * factor]));
  return worst;
}

double quantile_of(std::vector<double> v, double q) {
  if (v.empty()) throw std::invalid_argument("quantile of empty set");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

double median_of(std::vector<double> v) { return quantile_of(std::move(v), 0.5); }

std::vector<LevelStats> self_convergence_probe(double x0, const DriftSpec& drift,
                                               const StableParams& params, double horizon,
                                               std::size_t finest_n, std::size_t levels,
                                               std::uint64_t master_seed,
                                               std::size_t n_paths, int workers) {
  if (levels == 0 || finest_n % (std::size_t{1} << levels) != 0)
    throw std::invalid_argument("self_convergence_probe: finest_n must be divisible by 2^levels");
  // distances[level][path]; level 0 is the coarsest pair
  std::vector<std::vector<double>> distances(levels, std::vector<double>(n_paths));
  par::for_index(n_paths, workers, [&](std::size_t p) {
    const LevyPath fine = simulate_path(params, PathGrid{horizon, finest_n},
                                        rng::derive_seed(master_seed, p));
    SolutionPath prev;  // solution at the coarser grid of the current pair
    for (std::size_t lev = 0; lev < levels; ++lev) {
      const std::size_t coarse_factor = std::size_t{1} << (levels - lev);
      const SolutionPath coarse =
          lev == 0 ? euler_solve(x0, drift, restrict_path(fine, coarse_factor))
                   : std::move(prev);
      SolutionPath finer =
          euler_solve(x0, drift, restrict_path(fine, coarse_factor / 2));
      distances[lev][p] = sup_distance_shared(coarse, finer);
      prev = std::move(finer);
    }
  });
  std::vector<LevelStats> stats(levels);
  for (std::size_t lev = 0; lev < levels; ++lev) {
    stats[lev].coarse_steps = finest_n >> (levels - lev);
    stats[lev].fine_steps = stats[lev].coarse_steps * 2;
    stats[lev].median = median_of(distances[lev]);
    stats[lev].q1 = quantile_of(distances[lev], 0.25);
    stats[lev].q3 = quantile_of(distances[lev], 0.75);
  }
  return stats;
}

void write_solution_csv(const SolutionPath& sol, const LevyPath& path, std::ostream& os) {
  os << "t,xi,Z\n";
  for (std::size_t k = 0; k < sol.values.size(); ++k)
    os << report::fmt(sol.grid.time_at(k)) << ',' << report::fmt(sol.values[k]) << ','
       << report::fmt(path.values[k]) << '\n';
}

}  // namespace stolev
