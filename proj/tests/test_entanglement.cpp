#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "passent/entanglement.hpp"
#include "passent/states.hpp"
#include "support.hpp"

using namespace passent;
using passent::testing::max_abs;
using passent::testing::Rng;

namespace {

// Independent symplectic spectrum: |eigenvalues| of i sigma Gamma via a
// generic complex eigensolver, each value appearing twice.
std::vector<double> reference_spectrum(const CovarianceMatrix& g) {
  const Eigen::MatrixXcd m =
      std::complex<double>(0, 1) * (symplectic_form(g.modes()) * g.matrix()).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  std::vector<double> v;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) v.push_back(std::abs(es.eigenvalues()(k)));
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); k += 2) out.push_back(0.5 * (v[k] + v[k + 1]));
  return out;
}

}  // namespace

TEST_CASE("ModePartition") {
  const ModePartition p = ModePartition::from_modes({0, 2}, {1, 3});
  CHECK(p.modes() == 4);
  CHECK_FALSE(p.contiguous());
  CHECK(p.to_string() == "1,3:2,4");
  CHECK_FALSE(p.ppt_decides_separability());
  CHECK(ModePartition::halves(5).size_a() == 2);
  CHECK(ModePartition::split(1, 3).ppt_decides_separability());
  CHECK_THROWS_AS(ModePartition::from_modes({0, 1}, {1}), StructuralError);
  CHECK_THROWS_AS(ModePartition::from_modes({0}, {2}), StructuralError);
  CHECK_THROWS_AS(ModePartition::split(0, 2), StructuralError);
}

TEST_CASE("partial_transpose") {
  const ModePartition p = ModePartition::split(1, 1);
  CHECK(partial_transpose(states::vacuum(2), p).matrix() == Eigen::MatrixXd::Identity(4, 4));

  const CovarianceMatrix tms = states::two_mode_squeezed(0.5);
  const CovarianceMatrix pt = partial_transpose(tms, p);
  CHECK(pt(2, 3) == -tms(2, 3));
  CHECK(pt(0, 1) == tms(0, 1));
  CHECK(partial_transpose(pt, p).matrix() == tms.matrix());

  // Product state: transposing one party's state gives a valid state.
  const CovarianceMatrix prod = states::product({states::single_mode_block(0.4, 0.3), states::single_mode_block(0.2, 1.1)});
  const CovarianceMatrix pp = partial_transpose(prod, p);
  CHECK(validate(pp).ok());
  CHECK(pp(1, 3) == -prod(1, 3));

  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const CovarianceMatrix g = testing::random_state(4, rng);
    const ModePartition q = ModePartition::from_modes({0, 2}, {1, 3});
    const CovarianceMatrix t = partial_transpose(g, q);
    CHECK(t.matrix() == t.matrix().transpose());
    CHECK(partial_transpose(t, q).matrix() == g.matrix());
    // Non-contiguous transpose agrees with permute, transpose, permute back.
    const PassiveTransform perm = q.canonical_order();
    const CovarianceMatrix via = apply_passive(
        partial_transpose(apply_passive(g, perm), ModePartition::split(2, 2)), perm.inverse());
    CHECK(max_abs(via.matrix() - t.matrix()) < 1e-12);
  }
}

TEST_CASE("symplectic_spectrum") {
  for (double v : symplectic_spectrum(states::vacuum(3)).values) CHECK(v == doctest::Approx(1.0));
  CHECK(symplectic_spectrum(states::squeezed(0.5)).values[0] == doctest::Approx(1.0).epsilon(1e-12));

  const auto s = symplectic_spectrum(partial_transpose(states::two_mode_squeezed(0.5), ModePartition::split(1, 1)));
  CHECK(s.values[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(s.values[1] == doctest::Approx(std::exp(1.0)).epsilon(1e-12));

  Rng rng(7);
  for (int i = 0; i < 40; ++i) {
    const int n = 1 + i % 5;
    const CovarianceMatrix g = testing::random_state(n, rng);
    const auto ours = symplectic_spectrum(g).values;
    const auto ref = reference_spectrum(g);
    for (std::size_t k = 0; k < ours.size(); ++k) CHECK(std::abs(ours[k] - ref[k]) < 1e-9 * ref[k]);
    CHECK(ours.front() >= 1.0 - 1e-9);
  }
  CHECK_THROWS_AS(symplectic_spectrum(CovarianceMatrix(-Eigen::MatrixXd::Identity(2, 2))), NumericalDomainError);
}

TEST_CASE("entanglement_report") {
  const EntanglementReport vac = entanglement_report(states::vacuum(3), ModePartition::split(1, 2));
  CHECK(vac.log_negativity == 0.0);
  CHECK_FALSE(vac.is_nppt);

  const EntanglementReport tms = entanglement_report(states::two_mode_squeezed(0.5), ModePartition::split(1, 1));
  CHECK(tms.log_negativity == doctest::Approx(1.0 / std::numbers::ln2).epsilon(1e-12));
  CHECK(tms.is_nppt);
  CHECK(tms.label() == "NPPT (entangled, distillable)");

  const CovarianceMatrix prod = states::product({states::single_mode_block(0.6), Eigen::Matrix2d::Identity()});
  const EntanglementReport p = entanglement_report(prod, ModePartition::split(1, 1));
  CHECK(p.log_negativity == 0.0);
  CHECK(p.label() == "PPT (separable)");

  CHECK(entanglement_report(states::vacuum(4), ModePartition::split(2, 2)).label() == "PPT (separability undetermined)");
  CHECK_THROWS_AS(entanglement_report(states::vacuum(2), ModePartition::split(1, 2)), StructuralError);
}

TEST_CASE("local passive transforms leave the negativity unchanged") {
  Rng rng(13);
  for (int i = 0; i < 30; ++i) {
    const int n_a = 1 + i % 2, n_b = 1 + (i / 2) % 2;
    const int n = n_a + n_b;
    const CovarianceMatrix g = testing::random_state(n, rng, 0.8);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
    u.topLeftCorner(n_a, n_a) = oracle::haar_unitary(n_a, rng);
    u.bottomRightCorner(n_b, n_b) = oracle::haar_unitary(n_b, rng);
    const ModePartition part = ModePartition::split(n_a, n_b);
    const double before = entanglement_report(g, part).log_negativity;
    const double after = entanglement_report(apply_passive(g, passive_from_unitary(u)), part).log_negativity;
    CHECK(std::abs(before - after) < 1e-9);
  }
}

TEST_CASE("two-mode states have at most one symplectic eigenvalue below one") {
  Rng rng(19);
  for (int i = 0; i < 100; ++i) {
    const CovarianceMatrix g = testing::random_state(2, rng, 1.0);
    const auto s = symplectic_spectrum(partial_transpose(g, ModePartition::split(1, 1))).values;
    CHECK(s[0] * s[1] >= 1.0 - 1e-8);
  }
}
