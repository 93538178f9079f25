#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stolev/drift.hpp"
#include "stolev/stable.hpp"

namespace stolev {

struct DensityEstimate {
  double t = 0.0;
  double x = 0.0;  // start value
  std::vector<double> y_grid;
  std::vector<double> p_hat;
  std::size_t sample_count = 0;
  double bandwidth = 0.0;
};

struct BoundFit {
  double alpha = 0.0;
  double t = 0.0;
  double n_hat = 0.0;
  double argmax_y = 0.0;
};

std::vector<double> make_uniform_grid(double lo, double hi, std::size_t points);

// Terminal values xi(t) of M independent Euler solutions started at x.
std::vector<double> sample_terminal(const StableParams& params, const DriftSpec& drift,
                                    double x, double t, std::size_t count,
                                    std::size_t n_steps, std::uint64_t master_seed,
                                    int workers = 1);

// Silverman-type power law scaled by the interquartile range; variance-based
// rules are invalid for heavy tails.
double bandwidth_rule(std::span<const double> samples);

// Gaussian-kernel estimate on the grid; kernel truncated at 10 bandwidths
// over sorted samples. bandwidth <= 0 selects the documented rule.
DensityEstimate kde(std::span<const double> samples, double t, double x,
                    std::span<const double> y_grid, double bandwidth,
                    int workers = 1);

// Naive full-kernel reference, kept for testing the windowed kernel.
DensityEstimate kde_reference(std::span<const double> samples, double t, double x,
                              std::span<const double> y_grid, double bandwidth);

DensityEstimate estimate_density(const StableParams& params, const DriftSpec& drift,
                                 double x, double t, std::size_t count,
                                 std::size_t n_steps, std::span<const double> y_grid,
                                 double bandwidth, std::uint64_t master_seed,
                                 int workers = 1);

// Density of Z(t) by Simpson quadrature of (1/pi) int_0^L cos(lambda y)
// exp(-c t lambda^alpha) dlambda; L chosen so the integrand tail is below
// 1e-12. Tiny negative quadrature residue is clamped to zero.
std::vector<double> stable_density_oracle(const StableParams& params, double t,
                                          std::span<const double> y_grid,
                                          int workers = 1);

// N_hat = max over the grid of p(y) * (t + |x - y|)^(alpha+1) / t.
BoundFit fit_bound_constant(const DensityEstimate& est, double alpha, double x);
BoundFit fit_bound_constant(std::span<const double> y_grid,
                            std::span<const double> density, double alpha, double t,
                            double x);

// Hill estimator of the tail index of |samples|, using the top
// k_fraction of the order statistics. Requires at least 100 tail points.
double tail_exponent_estimate(std::span<const double> samples, double k_fraction);

double trapezoid_mass(std::span<const double> y_grid, std::span<const double> density);

}  // namespace stolev
