#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <optional>
#include <string>
#include <vector>

namespace stolev {

enum class DriftKind {
  zero,
  constant,
  sign,            // sign(0) = 0
  sign_plus,       // sign(0) = +1, tie-break variant
  mollified_sign,  // x/epsilon clamped to [-1, 1]
  holder_power,    // scale * |x|^beta
  piecewise_constant,
  linear_growth_capped,  // clamp(-slope * x, -cap, cap)
};

// Declarative drift description; closed under a small grammar so experiment
// configs stay serializable.
struct DriftSpec {
  DriftKind kind = DriftKind::zero;
  double value = 0.0;    // constant
  double epsilon = 0.0;  // mollified_sign
  double beta = 0.0;     // holder_power
  double scale = 0.0;    // holder_power
  double slope = 0.0;    // linear_growth_capped
  double cap = 0.0;      // linear_growth_capped
  std::vector<double> breakpoints;  // piecewise_constant, strictly increasing
  std::vector<double> values;       // piecewise_constant, size = breakpoints+1
  std::optional<double> declared_bound;

  void validate() const;

  // sup-norm known from the kind itself; nullopt for unbounded kinds.
  std::optional<double> analytic_bound() const;

  static DriftSpec zero();
  static DriftSpec constant(double k);
  static DriftSpec sign();
  static DriftSpec sign_plus();
  static DriftSpec mollified_sign(double epsilon);
  static DriftSpec holder_power(double beta, double scale);
  static DriftSpec piecewise_constant(std::vector<double> breakpoints,
                                      std::vector<double> values);
  static DriftSpec linear_growth_capped(double slope, double cap);
};

double evaluate_drift(const DriftSpec& spec, double x);

// Finite measure on the reals with density proportional to
// (1 + |x|)^(-(alpha + 1)); total mass 1 after normalization.
struct MeasureSpec {
  double alpha = 1.5;

  void validate() const;
  double normalization() const;       // alpha / 2
  double density(double x) const;     // normalized
  double tail_mass(double radius) const;  // mass outside [-radius, radius], closed form
};

// Indexed family n -> DriftSpec with its declared limit.
struct DriftSequence {
  std::string family;  // for reports
  std::function<DriftSpec(std::size_t)> term;
  DriftSpec limit;

  // shipped families
  static DriftSequence constant_to(double k0, double amplitude);   // k0 + amplitude/n
  static DriftSequence mollified_sign_family(double scale = 1.0);  // epsilon = scale/n -> sign
  static DriftSequence shifted_sign(double shift);                 // sign(x - shift) for all n, limit sign
  static DriftSequence growing_constant();                         // constant(n), unbounded
  static DriftSequence stationary(const DriftSpec& spec);          // a_n = limit = spec
};

struct BoundCheckResult {
  bool pass = false;
  double bound = 0.0;        // when pass
  std::size_t witness_n = 0; // when fail
  double witness_x = 0.0;
  std::string reason;
};

// Uniform bound check over a finite prefix of the family: per-kind analytic
// bounds where available, probe-grid maxima otherwise cause a fail (a grid
// alone cannot prove boundedness).
BoundCheckResult uniform_bound_check(const DriftSequence& seq, std::size_t n_terms,
                                     std::span<const double> probe_grid);

struct MeasureTableRow {
  std::size_t n = 0;
  double value = 0.0;  // quadrature estimate of mu{|a_n - a_0| > delta}
  double slack = 0.0;  // mu mass outside the quadrature window
};

// mu{|a_n - a_0| > delta} by midpoint quadrature on [-truncation, truncation],
// reported with the closed-form tail slack.
std::vector<MeasureTableRow> convergence_in_measure_check(
    const DriftSequence& seq, std::span<const std::size_t> indices,
    const MeasureSpec& mu, double delta, double truncation,
    std::size_t quad_points);

}  // namespace stolev
