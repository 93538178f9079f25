#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stolev/drift.hpp"
#include "stolev/stable.hpp"

namespace stolev {

// Indexed initial values x_n with declared limit x_0.
struct InitialSequence {
  enum class Kind { harmonic, fixed, alternating };
  Kind kind = Kind::fixed;
  double x0 = 0.0;
  double amplitude = 0.0;

  double at(std::size_t n) const;  // n >= 1
  static InitialSequence harmonic(double x0, double amplitude);
  static InitialSequence fixed(double x0);
  static InitialSequence alternating(double x0, double amplitude);
};

struct StabilitySpec {
  InitialSequence xs;
  DriftSequence drifts;
  StableParams params{1.5, 1.0};  // alpha must lie in (1, 2)
  double horizon = 1.0;
  std::vector<double> epsilons;
  std::vector<std::size_t> indices;  // sorted ascending
  std::size_t n_paths = 2000;
  std::size_t finest_n = 4096;
  std::uint64_t master_seed = 0;
  MeasureSpec mu{1.5};
  bool common_noise = true;  // false only for the coupling canary
  // hypothesis-check knobs
  double cond1_tol = 0.01;
  double cond4_delta = 0.01;
  double cond4_truncation = 1.0e4;
  std::size_t cond4_quad_points = 200000;

  void validate() const;
};

struct ConditionOutcome {
  std::string name;
  enum class Status { pass, fail, analytic } status = Status::pass;
  std::string detail;
};

struct StabilityCell {
  std::size_t n = 0;
  double epsilon = 0.0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double mean_sup = 0.0;
};

struct StabilityReport {
  std::vector<ConditionOutcome> hypotheses;
  std::vector<StabilityCell> cells;  // ordered by (n, epsilon)
  std::string analytic_note;
};

struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wilson 95% score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials);

// Conditions 1, 2, 4 checked numerically; 3, 5 and uniqueness of the limit
// equation reported as analytic.
std::vector<ConditionOutcome> check_hypotheses(const StabilitySpec& spec);

// Monte Carlo estimate of P(sup_t |xi_n - xi_0| > eps) on common noise.
// Throws HypothesisError when a numeric condition fails.
StabilityReport run_stability(const StabilitySpec& spec, int workers = 1);

}  // namespace stolev
