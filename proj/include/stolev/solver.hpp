#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "stolev/drift.hpp"
#include "stolev/stable.hpp"

namespace stolev {

enum class Provenance { euler, injected };

struct SolutionPath {
  PathGrid grid;
  std::vector<double> values;
  double x0 = 0.0;
  DriftSpec drift;
  std::uint64_t noise_seed = 0;
  Provenance provenance = Provenance::injected;
};

// Explicit Euler with left-endpoint drift evaluation. Each node is
// assembled as (x0 + A_k) + Z_k with A the running drift sum, so the
// zero-drift solution equals x0 + Z node-wise exactly and the residual of
// every Euler output is exactly zero.
SolutionPath euler_solve(double x0, const DriftSpec& drift, const LevyPath& path);

// Alternative construction for uniqueness probes: drift evaluated at the
// half-step predictor xi_k + a(xi_k)*dt/2 + dZ_k/2. Coincides with plain
// Euler for zero and constant drifts.
SolutionPath euler_solve_midpoint(double x0, const DriftSpec& drift,
                                  const LevyPath& path);

// max_k | xi(t_k) - ((x0 + sum_{j<k} a(xi_j) dt) + Z_k) |, the running sum
// and final assembly using the solver's operation order.
double integral_residual(const SolutionPath& candidate, const DriftSpec& drift,
                         const LevyPath& path);

struct LevelStats {
  std::size_t coarse_steps = 0;
  std::size_t fine_steps = 0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

// Common-noise self-convergence: one path at the finest grid per seed,
// dyadic restrictions, per consecutive pair the sup distance at shared
// nodes, aggregated over paths.
std::vector<LevelStats> self_convergence_probe(double x0, const DriftSpec& drift,
                                               const StableParams& params, double horizon,
                                               std::size_t finest_n, std::size_t levels,
                                               std::uint64_t master_seed,
                                               std::size_t n_paths, int workers = 1);

// sup over nodes shared by both grids of |a - b|; grids must be nested.
double sup_distance_shared(const SolutionPath& a, const SolutionPath& b);

double median_of(std::vector<double> v);
double quantile_of(std::vector<double> v, double q);

void write_solution_csv(const SolutionPath& sol, const LevyPath& path, std::ostream& os);

}  // namespace stolev
