#include <doctest.h>

#include <cmath>

#include "stolev/density.hpp"
#include "stolev/stable.hpp"

using namespace stolev;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("Fourier oracle matches the Cauchy density at alpha = 1") {
  const auto grid = make_uniform_grid(-10.0, 10.0, 401);
  const auto oracle = stable_density_oracle({1.0, 1.0}, 1.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid[i];
    CHECK(std::abs(oracle[i] - 1.0 / (kPi * (1.0 + y * y))) < 1e-6);
  }
}

TEST_CASE("Fourier oracle matches the Gaussian density at alpha = 2") {
  const auto grid = make_uniform_grid(-10.0, 10.0, 401);
  const auto oracle = stable_density_oracle({2.0, 1.0}, 1.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid[i];
    const double gauss = std::exp(-y * y / 4.0) / std::sqrt(4.0 * kPi);
    CHECK(std::abs(oracle[i] - gauss) < 1e-6);
  }
}

TEST_CASE("Fourier oracle: nonnegative, unit mass within 1e-4") {
  for (double alpha : {1.2, 1.5, 1.9}) {
    const auto grid = make_uniform_grid(-100.0, 100.0, 2001);
    const auto oracle = stable_density_oracle({alpha, 1.0}, 1.0, grid);
    for (double p : oracle) CHECK(p >= 0.0);
    // grid truncation leaves ~ 2 C_alpha * 100^-alpha outside
    const double tail = 2.0 * std::sin(kPi * alpha / 2.0) * std::tgamma(alpha) /
                        kPi * std::pow(100.0, -alpha);
    CHECK(trapezoid_mass(grid, oracle) + tail == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("windowed KDE agrees with the full-kernel reference") {
  const auto samples = sample_marginal({1.5, 1.0}, 1.0, 20000, 7, 1);
  const auto grid = make_uniform_grid(-8.0, 8.0, 101);
  const auto fast = kde(samples, 1.0, 0.0, grid, 0.0, 2);
  const auto slow = kde_reference(samples, 1.0, 0.0, grid, 0.0);
  CHECK(fast.bandwidth == slow.bandwidth);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(fast.p_hat[i] == doctest::Approx(slow.p_hat[i]).epsilon(1e-9));
}

TEST_CASE("KDE of drift-free samples: mass and symmetry") {
  const std::size_t m = 100000;
  const auto grid = make_uniform_grid(-20.0, 20.0, 801);
  const auto est = estimate_density({1.5, 1.0}, DriftSpec::zero(), 0.0, 1.0, m, 4,
                                    grid, 0.0, 13, 1);
  const double mass = trapezoid_mass(grid, est.p_hat);
  CHECK(mass >= 0.95);
  CHECK(mass <= 1.0);
  const std::size_t mid = grid.size() / 2;
  for (std::size_t off = 1; off <= 200; ++off)
    CHECK(std::abs(est.p_hat[mid + off] - est.p_hat[mid - off]) <= 0.015);
}

TEST_CASE("estimate_density parameter validation") {
  const auto grid = make_uniform_grid(-5.0, 5.0, 11);
  CHECK_THROWS_AS(estimate_density({1.5, 1.0}, DriftSpec::zero(), 0.0, 1.0, 100, 4,
                                   grid, 0.1, 1, 1),
                  std::invalid_argument);
  const auto samples = sample_marginal({1.5, 1.0}, 1.0, 20000, 7, 1);
  CHECK_THROWS_AS(kde(samples, 1.0, 0.0, grid, -0.5, 1), std::invalid_argument);
}

TEST_CASE("bound-constant fit on the oracle") {
  const auto grid = make_uniform_grid(-20.0, 20.0, 2001);
  const auto oracle = stable_density_oracle({1.5, 1.0}, 1.0, grid);
  const auto fit = fit_bound_constant(grid, oracle, 1.5, 1.0, 0.0);
  // the envelope tends to sin(pi alpha / 2) Gamma(alpha + 1) / pi far out;
  // its maximum sits above that, at moderate |y|, not at the grid edge
  const double tail_limit = std::sin(kPi * 0.75) * std::tgamma(2.5) / kPi;
  CHECK(fit.n_hat > tail_limit);
  CHECK(fit.n_hat < 3.0);
  CHECK(std::abs(fit.argmax_y) < 18.0);
}

TEST_CASE("Hill estimator recovers known tail indices") {
  SUBCASE("Cauchy") {
    const auto samples = sample_marginal({1.0, 1.0}, 1.0, 1000000, 3, 1);
    CHECK(tail_exponent_estimate(samples, 0.01) == doctest::Approx(1.0).epsilon(0.1));
  }
  SUBCASE("alpha = 1.5") {
    const auto samples = sample_marginal({1.5, 1.0}, 1.0, 1000000, 3, 1);
    const double est = tail_exponent_estimate(samples, 0.01);
    CHECK(std::abs(est - 1.5) <= 0.1);
  }
  SUBCASE("insufficient tail points") {
    const auto samples = sample_marginal({1.5, 1.0}, 1.0, 1000, 3, 1);
    CHECK_THROWS_AS(tail_exponent_estimate(samples, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(tail_exponent_estimate(samples, 0.2), std::invalid_argument);
  }
}

TEST_CASE("bandwidth rule shrinks with sample size") {
  const auto big = sample_marginal({1.5, 1.0}, 1.0, 100000, 5, 1);
  const auto small = std::vector<double>(big.begin(), big.begin() + 10000);
  CHECK(bandwidth_rule(big) < bandwidth_rule(small));
}
