#include "stolev/stable.hpp"

#include <cmath>
#include <stdexcept>

#include "stolev/parallel.hpp"
#include "stolev/report.hpp"
#include "stolev/rng.hpp"

namespace stolev {

void StableParams::validate() const {
  if (!(alpha > 0.0) || !(alpha <= 2.0))
    throw std::domain_error("StableParams: alpha must lie in (0, 2]");
  if (!(c > 0.0)) throw std::domain_error("StableParams: scale c must be positive");
}

void PathGrid::validate() const {
  if (!(horizon > 0.0)) throw std::domain_error("PathGrid: horizon must be positive");
  if (n_steps < 1) throw std::domain_error("PathGrid: n_steps must be >= 1");
}

double standard_stable_sample(double alpha, double u, double e) {
  if (!(alpha > 0.0) || !(alpha <= 2.0))
    throw std::domain_error("standard_stable_sample: alpha must lie in (0, 2]");
  if (alpha == 1.0) return std::tan(u);
  const double s = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
  const double tail =
      std::pow(std::cos((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
  return s * tail;
}

double standard_stable_at(double alpha, std::uint64_t seed, std::uint64_t step) {
  const auto d = rng::draws_at(seed, step);
  return standard_stable_sample(alpha, d.u, d.e);
}

LevyPath simulate_path(const StableParams& params, const PathGrid& grid,
                       std::uint64_t seed) {
  params.validate();
  grid.validate();
  LevyPath path;
  path.grid = grid;
  path.seed = seed;
  path.params = params;
  path.values.resize(grid.n_steps + 1);
  path.values[0] = 0.0;
  const double scale = std::pow(params.c * grid.dt(), 1.0 / params.alpha);
  for (std::size_t k = 0; k < grid.n_steps; ++k)
    path.values[k + 1] = path.values[k] + scale * standard_stable_at(params.alpha, seed, k);
  return path;
}

LevyPath restrict_path(const LevyPath& path, std::size_t factor) {
  if (factor == 0 || path.grid.n_steps % factor != 0)
    throw std::invalid_argument("restrict_path: factor must divide n_steps");
  LevyPath coarse;
  coarse.grid = PathGrid{path.grid.horizon, path.grid.n_steps / factor};
  coarse.seed = path.seed;
  coarse.params = path.params;
  coarse.values.resize(coarse.grid.n_steps + 1);
  for (std::size_t k = 0; k <= coarse.grid.n_steps; ++k)
    coarse.values[k] = path.values[k * factor];
  return coarse;
}

LevyPath zero_path(const PathGrid& grid) {
  grid.validate();
  LevyPath path;
  path.grid = grid;
  path.seed = 0;
  path.params = StableParams{2.0, 1.0};
  path.values.assign(grid.n_steps + 1, 0.0);
  return path;
}

double empirical_char(std::span<const double> samples, double lambda) {
  if (samples.empty())
    throw std::invalid_argument("empirical_char: empty sample set");
  const double s = par::block_sum(samples.size(), 1, [&](std::size_t i) {
    return std::cos(lambda * samples[i]);
  });
  return s / static_cast<double>(samples.size());
}

std::vector<double> sample_marginal(const StableParams& params, double t,
                                    std::size_t count, std::uint64_t master_seed,
                                    int workers) {
  params.validate();
  if (!(t > 0.0)) throw std::domain_error("sample_marginal: t must be positive");
  std::vector<double> out(count);
  const double scale = std::pow(params.c * t, 1.0 / params.alpha);
  par::for_index(count, workers, [&](std::size_t i) {
    out[i] = scale * standard_stable_at(params.alpha, master_seed, i);
  });
  return out;
}

void write_path_csv(const LevyPath& path, std::ostream& os) {
  os << "t,Z\n";
  for (std::size_t k = 0; k < path.values.size(); ++k)
    os << report::fmt(path.grid.time_at(k)) << ',' << report::fmt(path.values[k])
       << '\n';
}

}  // namespace stolev
