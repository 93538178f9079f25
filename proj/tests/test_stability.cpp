#include <doctest.h>

#include <cmath>

#include "stolev/stability.hpp"

using namespace stolev;

namespace {

StabilitySpec base_spec() {
  StabilitySpec spec;
  spec.xs = InitialSequence::harmonic(0.0, 1.0);
  spec.drifts = DriftSequence::mollified_sign_family();
  spec.params = {1.5, 1.0};
  spec.horizon = 1.0;
  spec.epsilons = {0.25};
  spec.indices = {2, 8, 32, 128};
  spec.n_paths = 50;
  spec.finest_n = 256;
  spec.master_seed = 5;
  spec.mu = MeasureSpec{1.5};
  return spec;
}

}  // namespace

TEST_CASE("wilson interval contains the point estimate") {
  for (std::size_t k : {0, 1, 7, 50, 100}) {
    const auto [lo, hi] = wilson_interval(k, 100);
    const double p = static_cast<double>(k) / 100.0;
    CHECK(lo <= p);
    CHECK(hi >= p);
    CHECK(lo >= 0.0);
    CHECK(hi <= 1.0);
  }
}

TEST_CASE("hypothesis checker") {
  SUBCASE("mollified family passes 1, 2, 4") {
    const auto outcomes = check_hypotheses(base_spec());
    REQUIRE(outcomes.size() == 6);
    CHECK(outcomes[0].status == ConditionOutcome::Status::pass);
    CHECK(outcomes[1].status == ConditionOutcome::Status::pass);
    CHECK(outcomes[2].status == ConditionOutcome::Status::analytic);
    CHECK(outcomes[3].status == ConditionOutcome::Status::pass);
    CHECK(outcomes[4].status == ConditionOutcome::Status::analytic);
    CHECK(outcomes[5].status == ConditionOutcome::Status::analytic);
  }
  SUBCASE("growing constants fail condition 2") {
    auto spec = base_spec();
    spec.drifts = DriftSequence::growing_constant();
    const auto outcomes = check_hypotheses(spec);
    CHECK(outcomes[1].status == ConditionOutcome::Status::fail);
  }
  SUBCASE("alternating initial values fail condition 1") {
    auto spec = base_spec();
    spec.xs = InitialSequence::alternating(0.0, 1.0);
    const auto outcomes = check_hypotheses(spec);
    CHECK(outcomes[0].status == ConditionOutcome::Status::fail);
  }
  SUBCASE("shifted sign fails condition 4") {
    auto spec = base_spec();
    spec.drifts = DriftSequence::shifted_sign(1.0);
    const auto outcomes = check_hypotheses(spec);
    CHECK(outcomes[3].status == ConditionOutcome::Status::fail);
  }
}

TEST_CASE("run_stability refuses failed hypotheses") {
  auto spec = base_spec();
  spec.drifts = DriftSequence::growing_constant();
  CHECK_THROWS_AS(run_stability(spec, 1), HypothesisError);
}

TEST_CASE("identical sequence: all distances zero") {
  auto spec = base_spec();
  spec.xs = InitialSequence::fixed(0.25);
  spec.drifts = DriftSequence::stationary(DriftSpec::sign());
  const auto report = run_stability(spec, 1);
  for (const auto& cell : report.cells) {
    CHECK(cell.p_hat == 0.0);
    CHECK(cell.mean_sup == 0.0);
  }
}

TEST_CASE("constant drift reproduces the closed form") {
  auto spec = base_spec();
  spec.xs = InitialSequence::harmonic(0.0, 1.0);
  spec.drifts = DriftSequence::constant_to(1.0, 1.0);  // K_n = 1 + 1/n, dyadic at the indices
  spec.epsilons = {0.1, 0.3, 0.6};  // no exact ties with the closed-form distances
  spec.n_paths = 20;
  spec.finest_n = 1024;
  const auto report = run_stability(spec, 1);
  for (const auto& cell : report.cells) {
    const double n = static_cast<double>(cell.n);
    const double closed = 1.0 / n + (1.0 / n) * spec.horizon;
    CHECK(cell.mean_sup == doctest::Approx(closed).epsilon(1e-12));
    CHECK(cell.p_hat == (closed > cell.epsilon ? 1.0 : 0.0));
  }
}

TEST_CASE("coupling canary: independent noise strictly increases the distance") {
  auto spec = base_spec();
  spec.drifts = DriftSequence::constant_to(1.0, 1.0);
  spec.n_paths = 100;
  spec.finest_n = 256;
  const auto coupled = run_stability(spec, 1);
  spec.common_noise = false;
  const auto uncoupled = run_stability(spec, 1);
  REQUIRE(coupled.cells.size() == uncoupled.cells.size());
  for (std::size_t i = 0; i < coupled.cells.size(); ++i)
    CHECK(uncoupled.cells[i].mean_sup > coupled.cells[i].mean_sup);
}

TEST_CASE("determinism: identical spec and seed give identical reports") {
  const auto a = run_stability(base_spec(), 1);
  const auto b = run_stability(base_spec(), 2);  // workers differ, results must not
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].p_hat == b.cells[i].p_hat);
    CHECK(a.cells[i].mean_sup == b.cells[i].mean_sup);
  }
}

TEST_CASE("spec validation gates the theorem regime") {
  auto spec = base_spec();
  spec.params.alpha = 2.0;  // generator allows it, the experiment does not
  CHECK_THROWS_AS(spec.validate(), std::domain_error);
  spec.params.alpha = 1.5;
  spec.epsilons = {-1.0};
  CHECK_THROWS_AS(spec.validate(), std::domain_error);
}
