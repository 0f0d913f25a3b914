#ifndef PASSENT_GAUSSIAN_HPP
#define PASSENT_GAUSSIAN_HPP

// Covariance matrices of zero-mean Gaussian states and the passive
// (orthogonal-symplectic) transformations acting on them.
//
// Conventions used throughout the library:
//   * quadratures are ordered (Q_1..Q_n, P_1..P_n) ("qqpp");
//   * the vacuum has covariance matrix equal to the identity;
//   * a passive transform K acts as Gamma -> K^T Gamma K and is built from
//     an n x n unitary U = X + iY as K = [[X, Y], [-Y, X]].

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace passent {

namespace tol {
inline constexpr double symmetry = 1e-10;
inline constexpr double unitarity = 1e-10;
inline constexpr double psd = 1e-9;
inline constexpr double eigen = 1e-9;
inline constexpr double determinant = 1e-8;
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Wrong shape: odd or non-square matrices, mode-count mismatches.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A covariance matrix that is asymmetric or violates Gamma + i sigma >= 0.
class ValidityError : public Error {
 public:
  ValidityError(const std::string& what, double violation)
      : Error(what), violation_(violation) {}
  double violation() const noexcept { return violation_; }

 private:
  double violation_;
};

class NumericalDomainError : public Error {
 public:
  using Error::Error;
};

class NonUnitaryError : public Error {
 public:
  NonUnitaryError(const std::string& what, double deviation)
      : Error(what), deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

/// Second moments of an n-mode Gaussian state, 2n x 2n, qqpp ordering.
///
/// Construction only checks the shape. Physicality is a separate question
/// answered by validate(), so that unphysical matrices (partial transposes,
/// corrupted input) can still be represented and diagnosed.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Eigen::MatrixXd data);

  int modes() const noexcept { return modes_; }
  int dim() const noexcept { return 2 * modes_; }
  const Eigen::MatrixXd& matrix() const noexcept { return data_; }
  double operator()(int row, int col) const { return data_(row, col); }

 private:
  int modes_;
  Eigen::MatrixXd data_;
};

/// The 2n x 2n form [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int modes);

/// Direct sum of two states; the modes of `second` are appended after those
/// of `first` and the result stays in qqpp order.
CovarianceMatrix direct_sum(const CovarianceMatrix& first, const CovarianceMatrix& second);

/// Covariance matrix of the listed modes (0-based, in the given order).
CovarianceMatrix reduced_state(const CovarianceMatrix& gamma, const std::vector<int>& modes);

enum class Validity { valid, asymmetric, unphysical };

struct ValidityVerdict {
  Validity status;
  double min_eigenvalue;  ///< smallest eigenvalue of Gamma + i sigma
  double asymmetry;       ///< max |Gamma - Gamma^T|
  bool ok() const noexcept { return status == Validity::valid; }
  /// Size of the worst violated constraint, 0 when valid.
  double violation() const noexcept;
};

std::string to_string(Validity v);

ValidityVerdict validate(const CovarianceMatrix& gamma);

/// Throws ValidityError unless validate(gamma) is ok.
void require_valid(const CovarianceMatrix& gamma);

struct SqueezingReport {
  Eigen::VectorXd eigenvalues;  ///< non-decreasing
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Eigen::VectorXd eigvec1;
  Eigen::VectorXd eigvec2;
  bool is_squeezed = false;
  double product() const noexcept { return lambda1 * lambda2; }
};

SqueezingReport squeezing_report(const CovarianceMatrix& gamma);

/// A passive transform, carried both as the mode unitary and as its real
/// 2n x 2n form. Instances can only be obtained through
/// passive_from_unitary(), so every instance satisfies U^dagger U = 1,
/// K^T K = 1 and K^T sigma K = sigma.
class PassiveTransform {
 public:
  static PassiveTransform identity(int modes);

  int modes() const noexcept { return static_cast<int>(unitary_.rows()); }
  const Eigen::MatrixXcd& unitary() const noexcept { return unitary_; }
  const Eigen::MatrixXd& real_form() const noexcept { return real_form_; }

  /// Composite that applies *this first and `next` afterwards.
  PassiveTransform then(const PassiveTransform& next) const;
  PassiveTransform inverse() const;

 private:
  PassiveTransform(Eigen::MatrixXcd unitary, Eigen::MatrixXd real_form);
  friend PassiveTransform passive_from_unitary(const Eigen::MatrixXcd& unitary);

  Eigen::MatrixXcd unitary_;
  Eigen::MatrixXd real_form_;
};

/// max |U^dagger U - 1| over entries.
double unitarity_defect(const Eigen::MatrixXcd& u);

PassiveTransform passive_from_unitary(const Eigen::MatrixXcd& unitary);

/// Permutation of modes: new mode k is old mode source[k].
PassiveTransform mode_permutation(const std::vector<int>& source);

/// Places a transform on `sub.modes()` modes onto the listed modes of an
/// n-mode system, identity elsewhere.
PassiveTransform embed(const PassiveTransform& sub, int modes, const std::vector<int>& targets);

/// K^T Gamma K. Symmetrized afterwards to remove rounding asymmetry.
CovarianceMatrix apply_passive(const CovarianceMatrix& gamma, const PassiveTransform& k);

using ComplexModeVector = Eigen::VectorXcd;

/// (q_1..q_n, p_1..p_n) -> (q_k + i p_k)_k.
ComplexModeVector complexify(const Eigen::VectorXd& v);
Eigen::VectorXd realify(const ComplexModeVector& psi);

}  // namespace passent

#endif  // PASSENT_GAUSSIAN_HPP
