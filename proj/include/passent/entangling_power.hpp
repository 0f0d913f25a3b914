#ifndef PASSENT_ENTANGLING_POWER_HPP
#define PASSENT_ENTANGLING_POWER_HPP

// What passive optics (beam splitters and phase shifters) can do to a
// Gaussian state's entanglement.
//
// A state can be made NPPT across some split by a passive transform iff the
// two smallest eigenvalues of its covariance matrix satisfy l1 * l2 < 1.
// The largest logarithmic negativity reachable on a two-mode subsystem is
// max(0, -log2(l1 * l2) / 2), and for two modes it is reached by a single
// phase shift on mode A followed by one beam splitter.

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "passent/entanglement.hpp"
#include "passent/gaussian.hpp"

namespace passent {

/// Absolute tolerance between the closed-form negativity and the value
/// achieved by a constructed transform.
inline constexpr double optimality_tolerance = 1e-6;

/// max(0, -log2(product) / 2).
double negativity_bound_bits(double eigenvalue_product);

struct EntanglingPowerVerdict {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double product = 0.0;
  bool can_entangle = false;
  /// Guaranteed full-state negativity across the split.
  double lower_bound_bits = 0.0;
  /// Exact maximum over passive transforms and two-mode subsystems.
  double attainable_two_mode_bits = 0.0;
  std::string partition;
  bool separability_decided = true;
};

/// Only the spectrum of gamma matters; the partition is kept for labelling.
EntanglingPowerVerdict verdict(const CovarianceMatrix& gamma, const ModePartition& part);

double attainable_two_mode(const CovarianceMatrix& gamma);

/// Block structure of a two-mode covariance matrix [[A, C], [C^T, B]].
enum class TwoModeCase {
  general,
  product,               // C = 0
  product_identical,     // C = 0, A = B
  product_with_thermal,  // C = 0, one reduced state proportional to 1
  simon_form,            // A = a 1, B = b 1, C diagonal
  symmetric,             // simon form with a = b
  two_mode_squeezed,     // symmetric, C = diag(c, -c), pure
};

std::string to_string(TwoModeCase c);

TwoModeCase classify_two_mode(const CovarianceMatrix& gamma);

/// Im<psi2|s|psi1> for s = sigma_z, sigma_y, sigma_x (in that order).
struct PauliImaginaryParts {
  double z = 0.0;
  double y = 0.0;
  double x = 0.0;
  double norm() const;
};

PauliImaginaryParts pauli_imaginary_parts(const Eigen::Vector2cd& psi1, const Eigen::Vector2cd& psi2);

/// F = cos(g) sz + cos(a) sin(g) sx + sin(a) sin(g) sy.
Eigen::Matrix2cd mixing_operator(double mixing_angle, double phase_angle);

/// Unitary R with R psi = (|psi|, 0)^T.
Eigen::Matrix2cd canonicalizing_rotation(const Eigen::Vector2cd& psi);

struct EntanglerAngles {
  double phase_angle = 0.0;   ///< alpha in [0, pi)
  double mixing_angle = 0.0;  ///< gamma; the beam splitter is B(gamma / 2)
  /// Sign s of the second eigenvector for which Im<s psi2|F|psi1> = +1.
  int eigvec_sign = 1;
  PauliImaginaryParts parts;
};

/// Solves cos g = Im<psi2|sz|psi1>, sin a sin g = Im<psi2|sy|psi1>,
/// cos a sin g = Im<psi2|sx|psi1>. Requires Re<psi2|psi1> = 0.
EntanglerAngles solve_entangler_angles(const Eigen::Vector2cd& psi1, const Eigen::Vector2cd& psi2);

/// Two-mode beam splitter [[cos t, -sin t], [sin t, cos t]].
PassiveTransform beam_splitter(double theta);
/// Phase rotation by `phase` on the first of two modes.
PassiveTransform phase_shifter(double phase);
/// phase_shifter(alpha) followed by beam_splitter(gamma / 2).
PassiveTransform entangler(double phase_angle, double mixing_angle);

struct EntanglerPlan {
  double phase_angle = 0.0;
  double mixing_angle = 0.0;
  bool phase_first = true;
  PassiveTransform transform = PassiveTransform::identity(2);
  double predicted_negativity_bits = 0.0;
  TwoModeCase two_mode_case = TwoModeCase::general;
  bool nothing_to_gain = false;
  bool used_special_case = false;
  int eigvec_sign = 1;
};

struct PlanOptions {
  /// Use the closed-form answers for the recognised block structures.
  bool use_special_cases = true;
};

EntanglerPlan optimal_two_mode_plan(const CovarianceMatrix& gamma, PlanOptions options = {});

/// General-path plan from a chosen orthonormal pair of eigenvectors of the
/// two smallest eigenvalues (any basis of a degenerate eigenspace works).
EntanglerPlan plan_from_eigenvectors(const Eigen::Vector4d& eigvec1, const Eigen::Vector4d& eigvec2,
                                     double eigenvalue_product);

struct Concentration {
  PassiveTransform transform;
  CovarianceMatrix state;
};

/// Passive S such that modes 1 and 2 of S^T Gamma S carry the two smallest
/// eigenvalues of Gamma.
Concentration concentrate_modes(const CovarianceMatrix& gamma);

struct OptimalEntanglement {
  PassiveTransform transform;
  CovarianceMatrix state;
  EntanglementReport report;
  EntanglingPowerVerdict verdict;
  std::optional<EntanglerPlan> plan;  ///< empty when nothing can be gained
};

/// Concentration, optimal two-mode entangler, then a permutation placing the
/// two concentrated modes on opposite sides of `part`.
OptimalEntanglement entangle_optimally(const CovarianceMatrix& gamma, const ModePartition& part);

/// Gamma + vacuum mode appended as the last mode.
CovarianceMatrix add_vacuum_ancilla(const CovarianceMatrix& gamma);

}  // namespace passent

#endif  // PASSENT_ENTANGLING_POWER_HPP
