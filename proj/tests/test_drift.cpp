#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "stolev/drift.hpp"

using namespace stolev;

TEST_CASE("drift evaluations") {
  CHECK(evaluate_drift(DriftSpec::sign(), -3.0) == -1.0);
  CHECK(evaluate_drift(DriftSpec::sign(), 0.0) == 0.0);
  CHECK(evaluate_drift(DriftSpec::sign_plus(), 0.0) == 1.0);
  CHECK(evaluate_drift(DriftSpec::mollified_sign(0.5), 0.0) == 0.0);
  CHECK(evaluate_drift(DriftSpec::mollified_sign(0.5), 0.25) == 0.5);
  CHECK(evaluate_drift(DriftSpec::mollified_sign(0.5), 3.0) == 1.0);
  CHECK(evaluate_drift(DriftSpec::holder_power(2.0 / 3.0, 3.0), 8.0) ==
        doctest::Approx(12.0));
  CHECK(evaluate_drift(DriftSpec::linear_growth_capped(1.0, 10.0), 1.0) == -1.0);
  CHECK(evaluate_drift(DriftSpec::linear_growth_capped(1.0, 10.0), -100.0) == 10.0);

  const auto pw = DriftSpec::piecewise_constant({-1.0, 1.0}, {-2.0, 0.5, 2.0});
  CHECK(evaluate_drift(pw, -5.0) == -2.0);   // end value extends
  CHECK(evaluate_drift(pw, -1.0) == -2.0);
  CHECK(evaluate_drift(pw, 0.0) == 0.5);
  CHECK(evaluate_drift(pw, 5.0) == 2.0);
}

TEST_CASE("drift validation") {
  CHECK_THROWS_AS(DriftSpec::mollified_sign(0.0), std::domain_error);
  CHECK_THROWS_AS(DriftSpec::piecewise_constant({1.0, 1.0}, {0.0, 1.0, 2.0}),
                  std::domain_error);
  CHECK_THROWS_AS(DriftSpec::piecewise_constant({1.0}, {0.0}), std::domain_error);
}

TEST_CASE("declared bounds hold on a dense probe grid") {
  const std::vector<DriftSpec> specs = {
      DriftSpec::sign(), DriftSpec::mollified_sign(0.25), DriftSpec::constant(-3.0),
      DriftSpec::piecewise_constant({0.0}, {-1.0, 1.0}),
      DriftSpec::linear_growth_capped(2.0, 5.0)};
  for (const auto& spec : specs) {
    REQUIRE(spec.declared_bound.has_value());
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double x = -50.0 + 1e-3 * i;
      worst = std::max(worst, std::abs(evaluate_drift(spec, x)));
    }
    CHECK(worst <= *spec.declared_bound);
  }
}

TEST_CASE("measure normalization: quadrature plus analytic tail is 1") {
  for (double alpha : {1.2, 1.5, 1.9}) {
    const MeasureSpec mu{alpha};
    const double radius = 1.0e4;
    const std::size_t n = 16000000;
    const double h = 2.0 * radius / static_cast<double>(n);
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = -radius + (static_cast<double>(i) + 0.5) * h;
      mass += mu.density(x) * h;
    }
    CHECK(mass + mu.tail_mass(radius) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("uniform bound check") {
  std::vector<double> probe;
  for (int i = -200; i <= 200; ++i) probe.push_back(0.05 * i);

  SUBCASE("mollified family passes with bound 1") {
    const auto r = uniform_bound_check(DriftSequence::mollified_sign_family(), 16, probe);
    CHECK(r.pass);
    CHECK(r.bound == 1.0);
  }
  SUBCASE("growing constants fail") {
    const auto r = uniform_bound_check(DriftSequence::growing_constant(), 16, probe);
    CHECK_FALSE(r.pass);
    CHECK(r.witness_n > 0);
  }
  SUBCASE("piecewise approximations of sign pass") {
    DriftSequence seq;
    seq.family = "pw";
    seq.term = [](std::size_t n) {
      const double eps = 1.0 / static_cast<double>(n);
      return DriftSpec::piecewise_constant({-eps, eps}, {-1.0, 0.0, 1.0});
    };
    seq.limit = DriftSpec::sign();
    CHECK(uniform_bound_check(seq, 16, probe).pass);
  }
}

TEST_CASE("convergence in measure") {
  const MeasureSpec mu{1.5};
  const std::vector<std::size_t> indices{2, 8, 32, 128};

  SUBCASE("identical sequence gives zero plus slack") {
    const auto seq = DriftSequence::stationary(DriftSpec::sign());
    for (const auto& row :
         convergence_in_measure_check(seq, indices, mu, 0.1, 100.0, 20000)) {
      CHECK(row.value == 0.0);
      CHECK(row.slack == doctest::Approx(mu.tail_mass(100.0)));
    }
  }

  SUBCASE("mollified family decays like mu of the shrinking interval") {
    const auto seq = DriftSequence::mollified_sign_family();
    const auto table =
        convergence_in_measure_check(seq, indices, mu, 0.1, 100.0, 2000000);
    // mollified_sign(1/n) differs from sign by > 0.1 on |x| < 0.9/n;
    // direct quadrature oracle of mu on that interval
    for (const auto& row : table) {
      const double half = 0.9 / static_cast<double>(row.n);
      const double expected =
          1.0 - std::pow(1.0 + half, -mu.alpha);  // mu([-half, half]) closed form
      CHECK(row.value == doctest::Approx(expected).epsilon(0.01));
    }
    for (std::size_t i = 1; i < table.size(); ++i)
      CHECK(table[i].value < table[i - 1].value);
  }

  SUBCASE("shifted sign stays bounded away from zero") {
    const auto seq = DriftSequence::shifted_sign(1.0);
    const auto table =
        convergence_in_measure_check(seq, indices, mu, 0.1, 100.0, 200000);
    for (const auto& row : table) CHECK(row.value > 0.1);
  }

  SUBCASE("parameter errors") {
    const auto seq = DriftSequence::stationary(DriftSpec::sign());
    CHECK_THROWS_AS(convergence_in_measure_check(seq, indices, mu, 0.1, 100.0, 0),
                    std::domain_error);
    CHECK_THROWS_AS(convergence_in_measure_check(seq, indices, mu, 0.0, 100.0, 100),
                    std::domain_error);
  }
}
