#include "stolev/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stolev/parallel.hpp"
#include "stolev/rng.hpp"
#include "stolev/solver.hpp"

namespace stolev {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kKernelCutoff = 10.0;  // bandwidths
}  // namespace

std::vector<double> make_uniform_grid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(hi > lo))
    throw std::invalid_argument("make_uniform_grid: need hi > lo and >= 2 points");
  std::vector<double> grid(points);
  const double h = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = lo + h * static_cast<double>(i);
  return grid;
}

std::vector<double> sample_terminal(const StableParams& params, const DriftSpec& drift,
                                    double x, double t, std::size_t count,
                                    std::size_t n_steps, std::uint64_t master_seed,
                                    int workers) {
  params.validate();
  if (!(t > 0.0)) throw std::domain_error("sample_terminal: t must be positive");
  std::vector<double> out(count);
  const PathGrid grid{t, n_steps};
  par::for_index(count, workers, [&](std::size_t p) {
    const LevyPath path =
        simulate_path(params, grid, rng::derive_seed(master_seed, p));
    out[p] = euler_solve(x, drift, path).values.back();
  });
  return out;
}

double bandwidth_rule(std::span<const double> samples) {
  if (samples.size() < 4) throw std::invalid_argument("bandwidth_rule: too few samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  const double q1 = quantile_of(sorted, 0.25);
  const double q3 = quantile_of(std::move(sorted), 0.75);
  const double iqr = q3 - q1;
  if (!(iqr > 0.0)) throw std::invalid_argument("bandwidth_rule: degenerate sample");
  return 0.9 * (iqr / 1.349) *
         std::pow(static_cast<double>(samples.size()), -0.2);
}

namespace {

DensityEstimate kde_common(std::span<const double> samples, double t, double x,
                           std::span<const double> y_grid, double bandwidth) {
  if (samples.empty()) throw std::invalid_argument("kde: empty sample set");
  if (bandwidth < 0.0) throw std::invalid_argument("kde: bandwidth must be positive");
  DensityEstimate est;
  est.t = t;
  est.x = x;
  est.y_grid.assign(y_grid.begin(), y_grid.end());
  est.p_hat.assign(y_grid.size(), 0.0);
  est.sample_count = samples.size();
  est.bandwidth = bandwidth > 0.0 ? bandwidth : bandwidth_rule(samples);
  return est;
}

}  // namespace

DensityEstimate kde(std::span<const double> samples, double t, double x,
                    std::span<const double> y_grid, double bandwidth, int workers) {
  DensityEstimate est = kde_common(samples, t, x, y_grid, bandwidth);
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = est.bandwidth;
  const double norm = 1.0 / (static_cast<double>(sorted.size()) * h *
                             std::sqrt(2.0 * kPi));
  par::for_index(y_grid.size(), workers, [&](std::size_t i) {
    const double y = y_grid[i];
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), y - kKernelCutoff * h);
    const auto hi = std::upper_bound(lo, sorted.end(), y + kKernelCutoff * h);
    double s = 0.0;
    for (auto it = lo; it != hi; ++it) {
      const double u = (y - *it) / h;
      s += std::exp(-0.5 * u * u);
    }
    est.p_hat[i] = norm * s;
  });
  return est;
}

DensityEstimate kde_reference(std::span<const double> samples, double t, double x,
                              std::span<const double> y_grid, double bandwidth) {
  DensityEstimate est = kde_common(samples, t, x, y_grid, bandwidth);
  const double h = est.bandwidth;
  const double norm = 1.0 / (static_cast<double>(samples.size()) * h *
                             std::sqrt(2.0 * kPi));
  for (std::size_t i = 0; i < y_grid.size(); ++i) {
    double s = 0.0;
    for (double v : samples) {
      const double u = (y_grid[i] - v) / h;
      s += std::exp(-0.5 * u * u);
    }
    est.p_hat[i] = norm * s;
  }
  return est;
}

DensityEstimate estimate_density(const StableParams& params, const DriftSpec& drift,
                                 double x, double t, std::size_t count,
                                 std::size_t n_steps, std::span<const double> y_grid,
                                 double bandwidth, std::uint64_t master_seed,
                                 int workers) {
  if (count < 10000) throw std::invalid_argument("estimate_density: need >= 10^4 samples");
  const auto samples =
      sample_terminal(params, drift, x, t, count, n_steps, master_seed, workers);
  return kde(samples, t, x, y_grid, bandwidth, workers);
}

std::vector<double> stable_density_oracle(const StableParams& params, double t,
                                          std::span<const double> y_grid,
                                          int workers) {
  params.validate();
  if (!(t > 0.0)) throw std::domain_error("stable_density_oracle: t must be positive");
  const double ct = params.c * t;
  // exp(-ct L^alpha) <= 1e-12 at the cutoff
  const double cutoff = std::pow(12.0 * std::log(10.0) / ct, 1.0 / params.alpha);
  const std::size_t n = 1 << 17;  // Simpson panels (even)
  const double step = cutoff / static_cast<double>(n);
  // Simpson weights times the characteristic-function factor, shared by all y.
  std::vector<double> weight(n + 1);
  par::for_index(n + 1, workers, [&](std::size_t k) {
    const double lam = step * static_cast<double>(k);
    const double coeff = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    weight[k] = coeff * std::exp(-ct * std::pow(lam, params.alpha));
  });
  std::vector<double> out(y_grid.size());
  par::for_index(y_grid.size(), workers, [&](std::size_t i) {
    const double y = y_grid[i];
    double acc = 0.0;
    for (std::size_t k = 0; k <= n; ++k)
      acc += weight[k] * std::cos(step * static_cast<double>(k) * y);
    out[i] = std::max(0.0, acc * step / (3.0 * kPi));
  });
  return out;
}

BoundFit fit_bound_constant(std::span<const double> y_grid,
                            std::span<const double> density, double alpha, double t,
                            double x) {
  if (y_grid.size() != density.size() || y_grid.empty())
    throw std::invalid_argument("fit_bound_constant: grid/density mismatch");
  BoundFit fit;
  fit.alpha = alpha;
  fit.t = t;
  for (std::size_t i = 0; i < y_grid.size(); ++i) {
    const double env =
        density[i] * std::pow(t + std::abs(x - y_grid[i]), alpha + 1.0) / t;
    if (env > fit.n_hat) {
      fit.n_hat = env;
      fit.argmax_y = y_grid[i];
    }
  }
  return fit;
}

BoundFit fit_bound_constant(const DensityEstimate& est, double alpha, double x) {
  return fit_bound_constant(est.y_grid, est.p_hat, alpha, est.t, x);
}

double tail_exponent_estimate(std::span<const double> samples, double k_fraction) {
  if (!(k_fraction > 0.0) || k_fraction > 0.05)
    throw std::invalid_argument("tail_exponent_estimate: k_fraction must lie in (0, 0.05]");
  std::vector<double> mags(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) mags[i] = std::abs(samples[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const std::size_t k =
      static_cast<std::size_t>(k_fraction * static_cast<double>(samples.size()));
  if (k < 100)
    throw std::invalid_argument("tail_exponent_estimate: fewer than 100 tail points");
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += std::log(mags[i] / mags[k]);
  return static_cast<double>(k) / s;
}

double trapezoid_mass(std::span<const double> y_grid, std::span<const double> density) {
  if (y_grid.size() != density.size() || y_grid.size() < 2)
    throw std::invalid_argument("trapezoid_mass: bad input");
  double mass = 0.0;
  for (std::size_t i = 1; i < y_grid.size(); ++i)
    mass += 0.5 * (density[i] + density[i - 1]) * (y_grid[i] - y_grid[i - 1]);
  return mass;
}

}  // namespace stolev
