#include "stolev/drift.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stolev {

void DriftSpec::validate() const {
  switch (kind) {
    case DriftKind::mollified_sign:
      if (!(epsilon > 0.0))
        throw std::domain_error("mollified_sign: epsilon must be positive");
      break;
    case DriftKind::holder_power:
      if (!(beta > 0.0)) throw std::domain_error("holder_power: beta must be positive");
      break;
    case DriftKind::linear_growth_capped:
      if (!(cap > 0.0))
        throw std::domain_error("linear_growth_capped: cap must be positive");
      break;
    case DriftKind::piecewise_constant: {
      if (values.size() != breakpoints.size() + 1)
        throw std::domain_error("piecewise_constant: need breakpoints+1 values");
      if (!std::is_sorted(breakpoints.begin(), breakpoints.end()) ||
          std::adjacent_find(breakpoints.begin(), breakpoints.end()) != breakpoints.end())
        throw std::domain_error("piecewise_constant: breakpoints must be strictly increasing");
      break;
    }
    default:
      break;
  }
}

std::optional<double> DriftSpec::analytic_bound() const {
  switch (kind) {
    case DriftKind::zero: return 0.0;
    case DriftKind::constant: return std::abs(value);
    case DriftKind::sign:
    case DriftKind::sign_plus:
    case DriftKind::mollified_sign: return 1.0;
    case DriftKind::holder_power: return std::nullopt;  // bounded on compacts only
    case DriftKind::piecewise_constant: {
      double m = 0.0;
      for (double v : values) m = std::max(m, std::abs(v));
      return m;
    }
    case DriftKind::linear_growth_capped: return cap;
  }
  return std::nullopt;
}

DriftSpec DriftSpec::zero() { return DriftSpec{}; }

DriftSpec DriftSpec::constant(double k) {
  DriftSpec s;
  s.kind = DriftKind::constant;
  s.value = k;
  s.declared_bound = std::abs(k);
  return s;
}

DriftSpec DriftSpec::sign() {
  DriftSpec s;
  s.kind = DriftKind::sign;
  s.declared_bound = 1.0;
  return s;
}

DriftSpec DriftSpec::sign_plus() {
  DriftSpec s;
  s.kind = DriftKind::sign_plus;
  s.declared_bound = 1.0;
  return s;
}

DriftSpec DriftSpec::mollified_sign(double epsilon) {
  DriftSpec s;
  s.kind = DriftKind::mollified_sign;
  s.epsilon = epsilon;
  s.declared_bound = 1.0;
  s.validate();
  return s;
}

DriftSpec DriftSpec::holder_power(double beta, double scale) {
  DriftSpec s;
  s.kind = DriftKind::holder_power;
  s.beta = beta;
  s.scale = scale;
  s.validate();
  return s;
}

DriftSpec DriftSpec::piecewise_constant(std::vector<double> breakpoints,
                                        std::vector<double> values) {
  DriftSpec s;
  s.kind = DriftKind::piecewise_constant;
  s.breakpoints = std::move(breakpoints);
  s.values = std::move(values);
  s.declared_bound = s.analytic_bound();
  s.validate();
  return s;
}

DriftSpec DriftSpec::linear_growth_capped(double slope, double cap) {
  DriftSpec s;
  s.kind = DriftKind::linear_growth_capped;
  s.slope = slope;
  s.cap = cap;
  s.declared_bound = cap;
  s.validate();
  return s;
}

double evaluate_drift(const DriftSpec& spec, double x) {
  switch (spec.kind) {
    case DriftKind::zero: return 0.0;
    case DriftKind::constant: return spec.value;
    case DriftKind::sign: return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    case DriftKind::sign_plus: return x >= 0.0 ? 1.0 : -1.0;
    case DriftKind::mollified_sign:
      return std::clamp(x / spec.epsilon, -1.0, 1.0);
    case DriftKind::holder_power:
      return spec.scale * std::pow(std::abs(x), spec.beta);
    case DriftKind::piecewise_constant: {
      // value index i for x in (b_{i-1}, b_i]; end values extend
      const auto it = std::lower_bound(spec.breakpoints.begin(),
                                       spec.breakpoints.end(), x);
      return spec.values[static_cast<std::size_t>(it - spec.breakpoints.begin())];
    }
    case DriftKind::linear_growth_capped:
      return std::clamp(-spec.slope * x, -spec.cap, spec.cap);
  }
  return 0.0;
}

void MeasureSpec::validate() const {
  if (!(alpha > 0.0)) throw std::domain_error("MeasureSpec: alpha must be positive");
}

double MeasureSpec::normalization() const { return alpha / 2.0; }

double MeasureSpec::density(double x) const {
  return normalization() * std::pow(1.0 + std::abs(x), -(alpha + 1.0));
}

double MeasureSpec::tail_mass(double radius) const {
  // 2 * integral_radius^inf (alpha/2)(1+x)^-(alpha+1) dx = (1+radius)^-alpha
  return std::pow(1.0 + radius, -alpha);
}

DriftSequence DriftSequence::constant_to(double k0, double amplitude) {
  DriftSequence seq;
  seq.family = "constant_to";
  seq.term = [k0, amplitude](std::size_t n) {
    return DriftSpec::constant(k0 + amplitude / static_cast<double>(n));
  };
  seq.limit = DriftSpec::constant(k0);
  return seq;
}

DriftSequence DriftSequence::mollified_sign_family(double scale) {
  DriftSequence seq;
  seq.family = "mollified_sign_family";
  seq.term = [scale](std::size_t n) {
    return DriftSpec::mollified_sign(scale / static_cast<double>(n));
  };
  seq.limit = DriftSpec::sign();
  return seq;
}

DriftSequence DriftSequence::shifted_sign(double shift) {
  DriftSequence seq;
  seq.family = "shifted_sign";
  seq.term = [shift](std::size_t) {
    return DriftSpec::piecewise_constant({shift}, {-1.0, 1.0});
  };
  seq.limit = DriftSpec::sign();
  return seq;
}

DriftSequence DriftSequence::growing_constant() {
  DriftSequence seq;
  seq.family = "growing_constant";
  seq.term = [](std::size_t n) {
    return DriftSpec::constant(static_cast<double>(n));
  };
  seq.limit = DriftSpec::zero();
  return seq;
}

DriftSequence DriftSequence::stationary(const DriftSpec& spec) {
  DriftSequence seq;
  seq.family = "stationary";
  seq.term = [spec](std::size_t) { return spec; };
  seq.limit = spec;
  return seq;
}

BoundCheckResult uniform_bound_check(const DriftSequence& seq, std::size_t n_terms,
                                     std::span<const double> probe_grid) {
  BoundCheckResult result;
  double overall = 0.0;
  for (std::size_t n = 0; n <= n_terms; ++n) {
    const DriftSpec spec = n == 0 ? seq.limit : seq.term(n);
    const auto analytic = spec.analytic_bound();
    const auto declared = spec.declared_bound;
    if (!analytic && !declared) {
      result.pass = false;
      result.witness_n = n;
      result.reason = "term has no analytic or declared bound";
      return result;
    }
    const double bound = analytic ? *analytic : *declared;
    for (double x : probe_grid) {
      const double v = std::abs(evaluate_drift(spec, x));
      if (declared && v > *declared) {
        result.pass = false;
        result.witness_n = n;
        result.witness_x = x;
        result.reason = "probe value exceeds declared bound";
        return result;
      }
    }
    overall = std::max(overall, bound);
  }
  // Growing per-term bounds: the family sup is finite for a fixed prefix,
  // but a bound that keeps increasing with n witnesses unboundedness.
  if (n_terms >= 2) {
    double prev = 0.0;
    bool growing = true;
    for (std::size_t n = 1; n <= n_terms; ++n) {
      const DriftSpec spec = seq.term(n);
      const auto b = spec.analytic_bound();
      const double bound = b ? *b : *spec.declared_bound;
      if (n > 1 && bound <= prev) growing = false;
      prev = bound;
    }
    if (growing && prev > 2.0 * (seq.limit.analytic_bound().value_or(0.0) + 1.0)) {
      result.pass = false;
      result.witness_n = n_terms;
      result.reason = "per-term bounds grow with n";
      return result;
    }
  }
  result.pass = true;
  result.bound = overall;
  return result;
}

std::vector<MeasureTableRow> convergence_in_measure_check(
    const DriftSequence& seq, std::span<const std::size_t> indices,
    const MeasureSpec& mu, double delta, double truncation,
    std::size_t quad_points) {
  mu.validate();
  if (!(delta > 0.0)) throw std::domain_error("convergence check: delta must be positive");
  if (quad_points == 0) throw std::domain_error("convergence check: zero quadrature points");
  const double slack = mu.tail_mass(truncation);
  const double h = 2.0 * truncation / static_cast<double>(quad_points);
  std::vector<MeasureTableRow> table;
  table.reserve(indices.size());
  for (std::size_t n : indices) {
    const DriftSpec a_n = seq.term(n);
    double mass = 0.0;
    for (std::size_t i = 0; i < quad_points; ++i) {
      const double x = -truncation + (static_cast<double>(i) + 0.5) * h;
      const double diff = std::abs(evaluate_drift(a_n, x) - evaluate_drift(seq.limit, x));
      if (diff > delta) mass += mu.density(x) * h;
    }
    table.push_back({n, mass, slack});
  }
  return table;
}

}  // namespace stolev
