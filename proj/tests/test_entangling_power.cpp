#include <doctest.h>

#include <cmath>
#include <numbers>

#include "passent/entangling_power.hpp"
#include "passent/oracle.hpp"
#include "passent/states.hpp"
#include "support.hpp"

using namespace passent;
using passent::testing::max_abs;
using passent::testing::Rng;

namespace {

constexpr double half_pi = std::numbers::pi / 2;

double achieved(const CovarianceMatrix& g, const EntanglerPlan& plan) {
  return entanglement_report(apply_passive(g, plan.transform), ModePartition::split(1, 1)).log_negativity;
}

double bound_of(const CovarianceMatrix& g) { return negativity_bound_bits(squeezing_report(g).product()); }

CovarianceMatrix squeezed_vacuum_pair(double r) {
  return states::product({states::single_mode_block(r), Eigen::Matrix2d::Identity()});
}

}  // namespace

TEST_CASE("verdict") {
  const EntanglingPowerVerdict vac = verdict(states::vacuum(3), ModePartition::split(1, 2));
  CHECK(vac.product == doctest::Approx(1.0));
  CHECK_FALSE(vac.can_entangle);
  CHECK(vac.lower_bound_bits == 0.0);

  const EntanglingPowerVerdict sv = verdict(squeezed_vacuum_pair(0.5), ModePartition::split(1, 1));
  CHECK(sv.product == doctest::Approx(std::exp(-1.0)));
  CHECK(sv.can_entangle);
  CHECK(sv.lower_bound_bits == doctest::Approx(0.5 * std::numbers::log2e).epsilon(1e-12));
  CHECK(sv.lower_bound_bits == doctest::Approx(0.7213).epsilon(1e-4));

  for (double r : {0.2, 0.9}) {
    const CovarianceMatrix g = states::product({states::single_mode_block(r), states::single_mode_block(r)});
    const EntanglingPowerVerdict v = verdict(g, ModePartition::split(1, 1));
    CHECK(v.product == doctest::Approx(std::exp(-4 * r)));
    CHECK(v.attainable_two_mode_bits == doctest::Approx(2 * r * std::numbers::log2e));
  }
  CHECK(attainable_two_mode(states::vacuum(3)) == 0.0);
}

TEST_CASE("classify_two_mode") {
  const Eigen::Matrix2d a = states::single_mode_block(0.3, 0.2);
  CHECK(classify_two_mode(states::product({a, a})) == TwoModeCase::product_identical);
  CHECK(classify_two_mode(states::product({a, 2 * Eigen::Matrix2d::Identity()})) == TwoModeCase::product_with_thermal);
  CHECK(classify_two_mode(states::product({a, states::single_mode_block(0.1)})) == TwoModeCase::product);
  CHECK(classify_two_mode(states::two_mode_squeezed(0.4)) == TwoModeCase::two_mode_squeezed);
  CHECK(classify_two_mode(states::simon_form(2, 2, 0.5, -0.3)) == TwoModeCase::symmetric);
  CHECK(classify_two_mode(states::simon_form(2, 3, 0.5, -0.3)) == TwoModeCase::simon_form);
  Rng rng(1);
  CHECK(classify_two_mode(testing::random_state(2, rng)) == TwoModeCase::general);
}

TEST_CASE("angle extraction") {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const SqueezingReport sq = squeezing_report(testing::random_state(2, rng));
    const Eigen::Vector2cd psi1 = complexify(sq.eigvec1);
    const Eigen::Vector2cd psi2 = complexify(sq.eigvec2);
    CHECK(std::abs(pauli_imaginary_parts(psi1, psi2).norm() - 1.0) < 1e-9);
    const EntanglerAngles a = solve_entangler_angles(psi1, psi2);
    CHECK(a.mixing_angle >= 0.0);
    CHECK(a.mixing_angle <= std::numbers::pi);
    CHECK(a.phase_angle >= 0.0);
    CHECK(a.phase_angle < std::numbers::pi);
    const double value = (double(a.eigvec_sign) * psi2).dot(mixing_operator(a.mixing_angle, a.phase_angle) * psi1).imag();
    CHECK(value == doctest::Approx(1.0).epsilon(1e-6));
    // The canonicalizing rotation is unitary and maps psi1 onto the first axis.
    const Eigen::Matrix2cd r = canonicalizing_rotation(psi1);
    CHECK((r.adjoint() * r - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs((r * psi1)(1)) < 1e-12);
  }
  // Parallel vectors carry no Pauli information.
  const Eigen::Vector2cd e(1, 0);
  CHECK_THROWS_AS(solve_entangler_angles(e, e), NumericalDomainError);
}

TEST_CASE("optimal_two_mode_plan examples") {
  SUBCASE("squeezed next to vacuum") {
    const CovarianceMatrix g = squeezed_vacuum_pair(0.5);
    const EntanglerPlan plan = optimal_two_mode_plan(g);
    CHECK(achieved(g, plan) == doctest::Approx(0.5 * std::numbers::log2e).epsilon(1e-9));
    CHECK(plan.mixing_angle == doctest::Approx(half_pi));
  }
  SUBCASE("identical single-mode states: pi/2 phase and 50:50") {
    const Eigen::Matrix2d a = states::single_mode_block(0.4, 0.7, 1.1);
    const CovarianceMatrix g = states::product({a, a});
    const EntanglerPlan plan = optimal_two_mode_plan(g);
    CHECK(plan.used_special_case);
    CHECK(plan.phase_angle == doctest::Approx(half_pi));
    CHECK(plan.mixing_angle == doctest::Approx(half_pi));
    CHECK(achieved(g, plan) == doctest::Approx(bound_of(g)).epsilon(1e-9));
  }
  SUBCASE("thermal partner: 50:50 without phase") {
    const CovarianceMatrix g = states::product({states::single_mode_block(0.6, 1.2), 1.2 * Eigen::Matrix2d::Identity()});
    const EntanglerPlan plan = optimal_two_mode_plan(g);
    CHECK(plan.phase_angle == 0.0);
    CHECK(plan.mixing_angle == doctest::Approx(half_pi));
    CHECK(achieved(g, plan) == doctest::Approx(bound_of(g)).epsilon(1e-9));
  }
  SUBCASE("symmetric states are already optimal") {
    for (const CovarianceMatrix& g : {states::two_mode_squeezed(0.7), states::simon_form(2, 2, 1.2, -1.4)}) {
      const double input = entanglement_report(g, ModePartition::split(1, 1)).log_negativity;
      CHECK(input == doctest::Approx(bound_of(g)).epsilon(1e-9));
      CHECK(achieved(g, optimal_two_mode_plan(g)) == doctest::Approx(input).epsilon(1e-9));
      PlanOptions general;
      general.use_special_cases = false;
      CHECK(achieved(g, optimal_two_mode_plan(g, general)) == doctest::Approx(input).epsilon(1e-9));
    }
  }
  SUBCASE("nothing to gain") {
    const EntanglerPlan plan = optimal_two_mode_plan(states::thermal(1.5, 2));
    CHECK(plan.nothing_to_gain);
    CHECK(plan.predicted_negativity_bits == 0.0);
  }
}

TEST_CASE("plan is exact on random two-mode states") {
  Rng rng(37);
  for (int i = 0; i < 100; ++i) {
    const CovarianceMatrix g = testing::random_state(2, rng, 0.8, 1.5);
    const EntanglerPlan plan = optimal_two_mode_plan(g);
    CHECK(std::abs(achieved(g, plan) - bound_of(g)) < optimality_tolerance);
    CHECK(std::abs(plan.predicted_negativity_bits - bound_of(g)) < 1e-12);
  }
}

TEST_CASE("degenerate eigenspaces: any orthonormal basis gives the optimum") {
  Rng rng(41);
  // Identical squeezed modes have a two-fold degenerate smallest eigenvalue.
  for (int i = 0; i < 20; ++i) {
    const Eigen::Matrix2d a = states::single_mode_block(testing::uniform(rng, 0.1, 1.0), testing::uniform(rng, 0, 3));
    const CovarianceMatrix g = states::product({a, a});
    const SqueezingReport sq = squeezing_report(g);
    const double t = testing::uniform(rng, 0, 2 * std::numbers::pi);
    const Eigen::Vector4d v1 = std::cos(t) * sq.eigvec1 + std::sin(t) * sq.eigvec2;
    const Eigen::Vector4d v2 = -std::sin(t) * sq.eigvec1 + std::cos(t) * sq.eigvec2;
    const EntanglerPlan plan = plan_from_eigenvectors(v1, v2, sq.product());
    CHECK(std::abs(achieved(g, plan) - bound_of(g)) < optimality_tolerance);
  }
}

TEST_CASE("concentrate_modes") {
  SUBCASE("squeezed mode buried in a vacuum background") {
    std::vector<Eigen::Matrix2d> blocks(4, Eigen::Matrix2d::Identity());
    blocks[2] = states::single_mode_block(0.5);
    const Concentration c = concentrate_modes(states::product(blocks));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced_state(c.state, {0, 1}).matrix());
    CHECK(es.eigenvalues()(0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(es.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("random states") {
    Rng rng(43);
    for (int n = 2; n <= 6; ++n)
      for (int i = 0; i < 10; ++i) {
        const CovarianceMatrix g = testing::random_state(n, rng);
        const SqueezingReport sq = squeezing_report(g);
        const Concentration c = concentrate_modes(g);
        CHECK(max_abs(apply_passive(g, c.transform).matrix() - c.state.matrix()) < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced_state(c.state, {0, 1}).matrix());
        CHECK(std::abs(es.eigenvalues()(0) - sq.lambda1) < 1e-9);
        CHECK(std::abs(es.eigenvalues()(1) - sq.lambda2) < 1e-9);
      }
  }
}

TEST_CASE("entangle_optimally") {
  const ModePartition one_one = ModePartition::split(1, 1);
  CHECK(entangle_optimally(squeezed_vacuum_pair(0.5), one_one).report.log_negativity ==
        doctest::Approx(0.5 * std::numbers::log2e).epsilon(1e-9));

  const double r = 0.35;
  const OptimalEntanglement pair =
      entangle_optimally(states::product({states::single_mode_block(r), states::single_mode_block(r)}), one_one);
  CHECK(pair.report.log_negativity == doctest::Approx(2 * r * std::numbers::log2e).epsilon(1e-9));
  REQUIRE(pair.plan);
  CHECK(pair.plan->phase_angle == doctest::Approx(half_pi));
  CHECK(pair.plan->mixing_angle == doctest::Approx(half_pi));

  const OptimalEntanglement vac = entangle_optimally(states::vacuum(4), ModePartition::split(2, 2));
  CHECK_FALSE(vac.plan);
  CHECK(vac.report.log_negativity == 0.0);
  CHECK(max_abs(vac.transform.real_form() - Eigen::MatrixXd::Identity(8, 8)) == 0.0);

  SUBCASE("non-contiguous split of a larger state") {
    Rng rng(47);
    for (int i = 0; i < 10; ++i) {
      const CovarianceMatrix g = testing::random_state(4, rng, 0.7, 1.3);
      const ModePartition part = ModePartition::from_modes({1, 3}, {0, 2});
      const OptimalEntanglement opt = entangle_optimally(g, part);
      if (!opt.verdict.can_entangle) continue;
      CHECK(opt.report.log_negativity >= opt.verdict.lower_bound_bits - optimality_tolerance);
      const CovarianceMatrix pair_state = reduced_state(opt.state, {part.party_a().front(), part.party_b().front()});
      CHECK(entanglement_report(pair_state, one_one).log_negativity ==
            doctest::Approx(opt.verdict.attainable_two_mode_bits).epsilon(1e-9));
    }
  }
}

TEST_CASE("vacuum ancilla") {
  const CovarianceMatrix one = add_vacuum_ancilla(states::squeezed(0.4));
  CHECK(one.modes() == 2);
  CHECK(squeezing_report(one).product() == doctest::Approx(std::exp(-0.8)));
  CHECK(verdict(one, ModePartition::split(1, 1)).can_entangle);
  CHECK_FALSE(verdict(add_vacuum_ancilla(states::vacuum(1)), ModePartition::split(1, 1)).can_entangle);
  // The ancilla contributes the two smallest eigenvalues (1, 1).
  CHECK(squeezing_report(add_vacuum_ancilla(states::thermal(2.0))).product() == doctest::Approx(1.0));
  CHECK_FALSE(verdict(add_vacuum_ancilla(states::thermal(2.0)), ModePartition::split(1, 1)).can_entangle);

  Rng rng(53);
  for (int i = 0; i < 30; ++i) {
    const CovarianceMatrix g = testing::random_state(2 + i % 3, rng);
    CHECK(squeezing_report(add_vacuum_ancilla(g)).product() <= squeezing_report(g).product() + 1e-12);
  }
}

TEST_CASE("criterion soundness against random passive transforms") {
  Rng rng(59);
  int checked = 0;
  for (int i = 0; i < 40 && checked < 10; ++i) {
    const int n = 2 + i % 3;
    const CovarianceMatrix g = testing::random_state(n, rng, 0.4, 2.5);
    if (verdict(g, ModePartition::halves(n)).can_entangle) continue;
    ++checked;
    for (int k = 0; k < 200; ++k) {
      const CovarianceMatrix moved = apply_passive(g, oracle::random_passive(n, rng));
      for (int n_a = 1; n_a < n; ++n_a)
        CHECK(entanglement_report(moved, ModePartition::split(n_a, n - n_a)).log_negativity == 0.0);
    }
  }
  CHECK(checked > 0);
}
