#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stolev/solver.hpp"

namespace stolev {

struct LatticeReport {
  double residual_1 = 0.0;
  double residual_2 = 0.0;
  double residual_min = 0.0;
  double residual_max = 0.0;
  double tolerance_used = 0.0;
  std::size_t crossings = 0;  // sign changes of sol1 - sol2, diagnostic
  bool pass = false;
};

// Node-wise minimum and maximum, provenance = injected. If the initial
// values differ, the min/max of them is used (diagnostic use only).
std::pair<SolutionPath, SolutionPath> pointwise_min_max(const SolutionPath& sol1,
                                                        const SolutionPath& sol2);

// Discrete closure check for the min/max of two near-solutions. Tolerance
// is safety_factor * (r1 + r2 + 2*K*dt) where K is the drift's declared
// bound: one drift-evaluation mismatch per crossing, each worth at most
// 2*K*dt.
LatticeReport lattice_check(const SolutionPath& sol1, const SolutionPath& sol2,
                            const DriftSpec& drift, const LevyPath& path,
                            double safety_factor);

struct DecayRow {
  std::size_t n_steps = 0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

// Pathwise-uniqueness evidence: plain Euler vs the half-step-shifted
// construction on common noise, per dyadic grid level.
std::vector<DecayRow> uniqueness_probe(double x0, const DriftSpec& drift,
                                       const StableParams& params, double horizon,
                                       std::span<const std::size_t> level_steps,
                                       std::size_t n_paths, std::uint64_t master_seed,
                                       int workers = 1);

}  // namespace stolev
