#include "passent/entangling_power.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace passent {

namespace {

using cd = std::complex<double>;

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, cd(0, -1), cd(0, 1), 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

void require_two_modes(const CovarianceMatrix& gamma, const char* what) {
  if (gamma.modes() != 2) {
    std::ostringstream msg;
    msg << what << " needs a two-mode state, got " << gamma.modes() << " modes";
    throw StructuralError(msg.str());
  }
}

EntanglerPlan identity_plan(TwoModeCase c) {
  EntanglerPlan plan;
  plan.two_mode_case = c;
  plan.nothing_to_gain = true;
  plan.predicted_negativity_bits = 0.0;
  return plan;
}

}  // namespace

double negativity_bound_bits(double eigenvalue_product) {
  if (!(eigenvalue_product > 0.0)) throw NumericalDomainError("eigenvalue product must be positive");
  return std::max(0.0, -std::log2(eigenvalue_product) / 2.0);
}

EntanglingPowerVerdict verdict(const CovarianceMatrix& gamma, const ModePartition& part) {
  if (gamma.modes() != part.modes()) throw StructuralError("partition does not match the number of modes");
  const SqueezingReport sq = squeezing_report(gamma);
  EntanglingPowerVerdict v;
  v.lambda1 = sq.lambda1;
  v.lambda2 = sq.lambda2;
  v.product = sq.product();
  v.can_entangle = v.product < 1.0 - tol::eigen;
  v.lower_bound_bits = negativity_bound_bits(v.product);
  v.attainable_two_mode_bits = v.lower_bound_bits;
  v.partition = part.to_string();
  v.separability_decided = part.ppt_decides_separability();
  return v;
}

double attainable_two_mode(const CovarianceMatrix& gamma) {
  if (gamma.modes() < 2) throw StructuralError("attainable_two_mode needs at least two modes");
  return negativity_bound_bits(squeezing_report(gamma).product());
}

std::string to_string(TwoModeCase c) {
  switch (c) {
    case TwoModeCase::general: return "general";
    case TwoModeCase::product: return "product";
    case TwoModeCase::product_identical: return "product_identical";
    case TwoModeCase::product_with_thermal: return "product_with_thermal";
    case TwoModeCase::simon_form: return "simon_form";
    case TwoModeCase::symmetric: return "symmetric";
    case TwoModeCase::two_mode_squeezed: return "two_mode_squeezed";
  }
  return "unknown";
}

TwoModeCase classify_two_mode(const CovarianceMatrix& gamma) {
  require_two_modes(gamma, "classify_two_mode");
  const Eigen::MatrixXd& g = gamma.matrix();
  // qqpp indices: q_A=0, q_B=1, p_A=2, p_B=3
  Eigen::Matrix2d a, b, c;
  a << g(0, 0), g(0, 2), g(2, 0), g(2, 2);
  b << g(1, 1), g(1, 3), g(3, 1), g(3, 3);
  c << g(0, 1), g(0, 3), g(2, 1), g(2, 3);
  const double t = 1e-9 * std::max(1.0, g.cwiseAbs().maxCoeff());

  auto zero = [t](const Eigen::Matrix2d& m) { return m.cwiseAbs().maxCoeff() <= t; };
  auto diagonal = [t](const Eigen::Matrix2d& m) { return std::abs(m(0, 1)) <= t && std::abs(m(1, 0)) <= t; };
  auto scalar = [&](const Eigen::Matrix2d& m) { return diagonal(m) && std::abs(m(0, 0) - m(1, 1)) <= t; };

  if (zero(c)) {
    if (zero(a - b)) return TwoModeCase::product_identical;
    if (scalar(a) || scalar(b)) return TwoModeCase::product_with_thermal;
    return TwoModeCase::product;
  }
  if (scalar(a) && scalar(b) && diagonal(c)) {
    if (std::abs(a(0, 0) - b(0, 0)) > t) return TwoModeCase::simon_form;
    if (std::abs(c(0, 0) + c(1, 1)) <= t && std::abs(g.determinant() - 1.0) <= tol::determinant)
      return TwoModeCase::two_mode_squeezed;
    return TwoModeCase::symmetric;
  }
  return TwoModeCase::general;
}

double PauliImaginaryParts::norm() const { return std::sqrt(z * z + y * y + x * x); }

PauliImaginaryParts pauli_imaginary_parts(const Eigen::Vector2cd& psi1, const Eigen::Vector2cd& psi2) {
  PauliImaginaryParts p;
  p.z = psi2.dot(pauli_z() * psi1).imag();
  p.y = psi2.dot(pauli_y() * psi1).imag();
  p.x = psi2.dot(pauli_x() * psi1).imag();
  return p;
}

Eigen::Matrix2cd mixing_operator(double mixing_angle, double phase_angle) {
  return std::cos(mixing_angle) * pauli_z() + std::cos(phase_angle) * std::sin(mixing_angle) * pauli_x() +
         std::sin(phase_angle) * std::sin(mixing_angle) * pauli_y();
}

Eigen::Matrix2cd canonicalizing_rotation(const Eigen::Vector2cd& psi) {
  const double nrm = psi.norm();
  if (nrm == 0.0) throw NumericalDomainError("canonicalizing_rotation: zero vector");
  const Eigen::Vector2cd u = psi / nrm;
  // Rows: u^dagger and its orthogonal complement.
  Eigen::Matrix2cd r;
  r << std::conj(u(0)), std::conj(u(1)), -u(1), u(0);
  return r;
}

EntanglerAngles solve_entangler_angles(const Eigen::Vector2cd& psi1, const Eigen::Vector2cd& psi2) {
  EntanglerAngles out;
  out.parts = pauli_imaginary_parts(psi1, psi2);
  const double nrm = out.parts.norm();
  if (!(nrm > 0.5)) {
    std::ostringstream msg;
    msg << "eigenvector pair is not orthogonal in the real sense (|Im parts| = " << nrm << ")";
    throw NumericalDomainError(msg.str());
  }
  double z = out.parts.z / nrm;
  double y = out.parts.y / nrm;
  double x = out.parts.x / nrm;

  // The eigenvector sign is free; pick it so that gamma lands in [0, pi]
  // and alpha in [0, pi).
  constexpr double eps = 1e-12;
  const bool flip = y < -eps || (std::abs(y) <= eps && x < -eps) ||
                    (std::abs(y) <= eps && std::abs(x) <= eps && z < 0.0);
  if (flip) {
    z = -z;
    y = -y;
    x = -x;
    out.eigvec_sign = -1;
  }

  const double sin_g = std::hypot(x, y);
  out.mixing_angle = std::atan2(sin_g, z);
  if (sin_g < 1e-8) {
    out.phase_angle = 0.0;
    return out;
  }
  double alpha = std::atan2(y, x);
  if (alpha < 0.0 && alpha > -1e-9) alpha = 0.0;
  if (alpha < 0.0) {
    // (alpha + pi, -gamma) gives the same F.
    alpha += std::numbers::pi;
    out.mixing_angle = -out.mixing_angle;
  }
  if (alpha >= std::numbers::pi) {
    alpha -= std::numbers::pi;
    out.mixing_angle = -out.mixing_angle;
  }
  out.phase_angle = alpha;
  return out;
}

PassiveTransform beam_splitter(double theta) {
  Eigen::Matrix2cd u;
  u << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return passive_from_unitary(u);
}

PassiveTransform phase_shifter(double phase) {
  // With Psi = q + i p and Gamma -> K^T Gamma K, L(alpha) = diag(e^{-i alpha}, 1)
  // acting on mode vectors appears complex-conjugated in the mode unitary.
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  u(0, 0) = std::polar(1.0, phase);
  return passive_from_unitary(u);
}

PassiveTransform entangler(double phase_angle, double mixing_angle) {
  return phase_shifter(phase_angle).then(beam_splitter(mixing_angle / 2.0));
}

EntanglerPlan plan_from_eigenvectors(const Eigen::Vector4d& eigvec1, const Eigen::Vector4d& eigvec2,
                                     double eigenvalue_product) {
  if (!(eigenvalue_product < 1.0 - tol::eigen)) return identity_plan(TwoModeCase::general);
  const Eigen::Vector2cd psi1 = complexify(eigvec1);
  const Eigen::Vector2cd psi2 = complexify(eigvec2);
  const EntanglerAngles angles = solve_entangler_angles(psi1, psi2);
  EntanglerPlan plan;
  plan.phase_angle = angles.phase_angle;
  plan.mixing_angle = angles.mixing_angle;
  plan.eigvec_sign = angles.eigvec_sign;
  plan.transform = entangler(angles.phase_angle, angles.mixing_angle);
  plan.predicted_negativity_bits = negativity_bound_bits(eigenvalue_product);
  return plan;
}

EntanglerPlan optimal_two_mode_plan(const CovarianceMatrix& gamma, PlanOptions options) {
  require_two_modes(gamma, "optimal_two_mode_plan");
  const SqueezingReport sq = squeezing_report(gamma);
  const double product = sq.product();
  const TwoModeCase kind = classify_two_mode(gamma);
  const bool nothing_to_gain = !(product < 1.0 - tol::eigen);

  // The recognised cases keep their closed-form angles even when nothing can
  // be gained; every passive transform is then equally (non-)entangling.
  EntanglerPlan plan;
  if (options.use_special_cases) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    switch (kind) {
      case TwoModeCase::product_identical:
        plan.phase_angle = half_pi;
        plan.mixing_angle = half_pi;
        plan.used_special_case = true;
        break;
      case TwoModeCase::product_with_thermal:
        plan.phase_angle = 0.0;
        plan.mixing_angle = half_pi;
        plan.used_special_case = true;
        break;
      case TwoModeCase::symmetric:
      case TwoModeCase::two_mode_squeezed:
        // already optimal
        plan.used_special_case = true;
        break;
      default: break;
    }
  }
  if (plan.used_special_case) {
    plan.transform = entangler(plan.phase_angle, plan.mixing_angle);
    plan.predicted_negativity_bits = negativity_bound_bits(product);
    plan.nothing_to_gain = nothing_to_gain;
  } else if (nothing_to_gain) {
    return identity_plan(kind);
  } else {
    plan = plan_from_eigenvectors(sq.eigvec1, sq.eigvec2, product);
  }
  plan.two_mode_case = kind;
  return plan;
}

Concentration concentrate_modes(const CovarianceMatrix& gamma) {
  const int n = gamma.modes();
  if (n < 2) throw StructuralError("concentrate_modes needs at least two modes");
  const SqueezingReport sq = squeezing_report(gamma);
  if (n == 2) return {PassiveTransform::identity(2), gamma};

  // Orthonormal basis whose first vectors span {Psi1, Psi2}, completed with
  // unit vectors.
  std::vector<Eigen::VectorXcd> candidates{complexify(sq.eigvec1), complexify(sq.eigvec2)};
  for (int k = 0; k < n; ++k) candidates.push_back(Eigen::VectorXcd::Unit(n, k));
  std::vector<Eigen::VectorXcd> basis;
  for (const auto& c : candidates) {
    if (static_cast<int>(basis.size()) == n) break;
    Eigen::VectorXcd v = c;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) v -= q * q.dot(v);
    const double nrm = v.norm();
    if (nrm > 1e-10) basis.push_back(v / nrm);
  }
  Eigen::MatrixXcd q(n, n);
  for (int k = 0; k < n; ++k) q.col(k) = basis[k];

  // Eigenvectors of S^T Gamma S complexify to U_S^T Psi = Q^dagger Psi.
  PassiveTransform s = passive_from_unitary(q.conjugate());
  CovarianceMatrix out = apply_passive(gamma, s);
  return {std::move(s), std::move(out)};
}

OptimalEntanglement entangle_optimally(const CovarianceMatrix& gamma, const ModePartition& part) {
  const EntanglingPowerVerdict v = verdict(gamma, part);
  const int n = gamma.modes();
  if (!v.can_entangle) {
    return {PassiveTransform::identity(n), gamma, entanglement_report(gamma, part), v, std::nullopt};
  }

  const Concentration conc = concentrate_modes(gamma);
  const EntanglerPlan plan = optimal_two_mode_plan(reduced_state(conc.state, {0, 1}));

  // New mode a0 <- concentrated mode 0, new mode b0 <- concentrated mode 1.
  std::vector<int> source(n, -1);
  source[part.party_a().front()] = 0;
  source[part.party_b().front()] = 1;
  int next = 2;
  for (int& s : source)
    if (s < 0) s = next++;

  const PassiveTransform total =
      conc.transform.then(embed(plan.transform, n, {0, 1})).then(mode_permutation(source));
  CovarianceMatrix state = apply_passive(gamma, total);
  EntanglementReport report = entanglement_report(state, part);
  return {total, std::move(state), std::move(report), v, plan};
}

CovarianceMatrix add_vacuum_ancilla(const CovarianceMatrix& gamma) {
  require_valid(gamma);
  return direct_sum(gamma, CovarianceMatrix(Eigen::MatrixXd::Identity(2, 2)));
}

}  // namespace passent
