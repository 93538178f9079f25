#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace stolev {

// Parameters of the symmetric stable law with characteristic exponent
// c * |lambda|^alpha.
struct StableParams {
  double alpha = 1.5;
  double c = 1.0;

  void validate() const;  // throws std::domain_error
};

struct PathGrid {
  double horizon = 1.0;
  std::size_t n_steps = 1;

  void validate() const;
  double dt() const { return horizon / static_cast<double>(n_steps); }
  double time_at(std::size_t k) const { return static_cast<double>(k) * dt(); }
};

// A grid-discretized sample path of the driving noise. values[0] == 0 and
// each increment is a pure function of (seed, step index, params), so a
// path restricted to a coarser dyadic grid agrees with the fine path at
// shared nodes.
struct LevyPath {
  PathGrid grid;
  std::vector<double> values;
  std::uint64_t seed = 0;
  StableParams params;

  double increment(std::size_t k) const { return values[k + 1] - values[k]; }
};

// Chambers-Mallows-Stuck transform, symmetric case: maps a uniform on
// (-pi/2, pi/2) and a unit exponential to a variate with characteristic
// function exp(-|lambda|^alpha). Reduces to tan(u) at alpha = 1 and to
// 2*sin(u)*sqrt(e) (Gaussian, variance 2) at alpha = 2.
double standard_stable_sample(double alpha, double u, double e);

// The k-th standard variate of a seeded stream.
double standard_stable_at(double alpha, std::uint64_t seed, std::uint64_t step);

LevyPath simulate_path(const StableParams& params, const PathGrid& grid,
                       std::uint64_t seed);

// Every factor-th node of the input; factor must divide n_steps.
LevyPath restrict_path(const LevyPath& path, std::size_t factor);

// Z identically zero on the grid; used for deterministic (ODE) experiments.
LevyPath zero_path(const PathGrid& grid);

// Mean of cos(lambda * x) over the samples; the empirical characteristic
// function of a symmetric law. Throws std::invalid_argument on empty input.
double empirical_char(std::span<const double> samples, double lambda);

// M independent samples of Z(t), parallel across a seeded stream.
std::vector<double> sample_marginal(const StableParams& params, double t,
                                    std::size_t count, std::uint64_t master_seed,
                                    int workers = 1);

void write_path_csv(const LevyPath& path, std::ostream& os);

}  // namespace stolev
