#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "stolev/drift.hpp"
#include "stolev/stability.hpp"
#include "stolev/stable.hpp"

namespace stolev {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimulateConfig {
  StableParams params;
  double horizon = 1.0;
  std::size_t n_steps = 4096;
  std::size_t n_paths = 1;
};

struct LatticeConfig {
  std::string mode = "stochastic";  // "ode" or "stochastic"
  // stochastic census
  DriftSpec drift = DriftSpec::sign();
  DriftSpec drift_variant = DriftSpec::sign_plus();
  StableParams params{1.5, 1.0};
  double horizon = 1.0;
  std::size_t n_steps = 4096;
  std::size_t n_trials = 500;
  double safety_factor = 2.0;
  double x0 = 0.0;
  double min_pass_fraction = 0.99;
  // ode showcase: injected solutions 0 and t^3 for drift 3|x|^(2/3)
  double ode_residual_factor = 3.0;  // tolerance = factor * dt
};

struct UniquenessConfig {
  DriftSpec drift = DriftSpec::sign();
  StableParams params{1.5, 1.0};
  double horizon = 1.0;
  double x0 = 0.0;
  std::vector<std::size_t> level_steps;
  std::size_t n_paths = 200;
  bool require_decreasing = true;
};

struct StabilityConfig {
  StabilitySpec spec;
  bool require_trend = true;
};

struct DensityConfig {
  StableParams params{1.5, 1.0};
  DriftSpec drift = DriftSpec::zero();
  double x = 0.0;
  double t = 1.0;
  std::size_t sample_count = 1000000;
  std::size_t n_steps = 16;
  double grid_lo = -20.0;
  double grid_hi = 20.0;
  std::size_t grid_points = 2001;
  double bandwidth = 0.0;  // 0 -> rule
  double k_fraction = 0.01;
  bool compare_oracle = true;   // verdict includes the L-inf check
  double linf_tol = 0.01;
  double mass_lo = 0.95;
  double n_hat_ceiling = 1000.0;
};

struct ExperimentConfig {
  std::string kind;  // simulate | lattice | uniqueness | stability | density
  std::variant<SimulateConfig, LatticeConfig, UniquenessConfig, StabilityConfig,
               DensityConfig>
      payload;
  std::uint64_t master_seed = 0;
  int workers = 0;  // 0 = auto
  std::string output_dir = "out";
};

// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& file);
std::string serialize_config(const ExperimentConfig& config);

DriftSpec drift_from_json_text(const std::string& json_text);

}  // namespace stolev
