#include "passent/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace passent {

namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd data) : modes_(0), data_(std::move(data)) {
  if (data_.rows() != data_.cols()) {
    std::ostringstream msg;
    msg << "covariance matrix must be square, got " << data_.rows() << "x" << data_.cols();
    throw StructuralError(msg.str());
  }
  if (data_.rows() == 0 || data_.rows() % 2 != 0) {
    std::ostringstream msg;
    msg << "covariance matrix must have even positive dimension 2n, got " << data_.rows();
    throw StructuralError(msg.str());
  }
  if (!data_.allFinite()) throw StructuralError("covariance matrix has non-finite entries");
  modes_ = static_cast<int>(data_.rows() / 2);
}

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  s.topRightCorner(modes, modes).setIdentity();
  s.bottomLeftCorner(modes, modes) = -Eigen::MatrixXd::Identity(modes, modes);
  return s;
}

CovarianceMatrix direct_sum(const CovarianceMatrix& first, const CovarianceMatrix& second) {
  const int n1 = first.modes();
  const int n2 = second.modes();
  const int n = n1 + n2;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  // Index map old -> new for each block: q's of `first`, q's of `second`,
  // p's of `first`, p's of `second`.
  auto place = [&](const Eigen::MatrixXd& m, int offset, int nm) {
    for (int r = 0; r < 2 * nm; ++r) {
      const int rr = r < nm ? offset + r : n + offset + (r - nm);
      for (int c = 0; c < 2 * nm; ++c) {
        const int cc = c < nm ? offset + c : n + offset + (c - nm);
        out(rr, cc) = m(r, c);
      }
    }
  };
  place(first.matrix(), 0, n1);
  place(second.matrix(), n1, n2);
  return CovarianceMatrix(std::move(out));
}

CovarianceMatrix reduced_state(const CovarianceMatrix& gamma, const std::vector<int>& modes) {
  const int n = gamma.modes();
  const int m = static_cast<int>(modes.size());
  if (m == 0) throw StructuralError("reduced_state: empty mode list");
  std::vector<int> idx;
  idx.reserve(2 * m);
  for (int k : modes) {
    if (k < 0 || k >= n) throw StructuralError("reduced_state: mode index out of range");
    idx.push_back(k);
  }
  for (int k : modes) idx.push_back(n + k);
  Eigen::MatrixXd out(2 * m, 2 * m);
  for (int r = 0; r < 2 * m; ++r)
    for (int c = 0; c < 2 * m; ++c) out(r, c) = gamma(idx[r], idx[c]);
  return CovarianceMatrix(std::move(out));
}

double ValidityVerdict::violation() const noexcept {
  switch (status) {
    case Validity::valid: return 0.0;
    case Validity::asymmetric: return asymmetry;
    case Validity::unphysical: return -min_eigenvalue;
  }
  return 0.0;
}

std::string to_string(Validity v) {
  switch (v) {
    case Validity::valid: return "valid";
    case Validity::asymmetric: return "asymmetric";
    case Validity::unphysical: return "unphysical";
  }
  return "unknown";
}

ValidityVerdict validate(const CovarianceMatrix& gamma) {
  const Eigen::MatrixXd& g = gamma.matrix();
  const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
  // Hermitian eigendecomposition rather than Cholesky, so that the size of a
  // violation can be reported.
  Eigen::MatrixXcd h = symmetrized(g).cast<std::complex<double>>();
  h += std::complex<double>(0.0, 1.0) * symplectic_form(gamma.modes()).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();

  ValidityVerdict v{Validity::valid, min_eig, asym};
  if (asym > tol::symmetry) {
    v.status = Validity::asymmetric;
  } else if (min_eig < -tol::psd) {
    v.status = Validity::unphysical;
  }
  return v;
}

void require_valid(const CovarianceMatrix& gamma) {
  const ValidityVerdict v = validate(gamma);
  if (v.ok()) return;
  std::ostringstream msg;
  if (v.status == Validity::asymmetric) {
    msg << "covariance matrix is not symmetric (max asymmetry " << v.asymmetry << ")";
  } else {
    msg << "covariance matrix violates Gamma + i sigma >= 0 (min eigenvalue " << v.min_eigenvalue << ")";
  }
  throw ValidityError(msg.str(), v.violation());
}

SqueezingReport squeezing_report(const CovarianceMatrix& gamma) {
  require_valid(gamma);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized(gamma.matrix()));
  if (es.info() != Eigen::Success) throw NumericalDomainError("eigendecomposition failed");
  SqueezingReport r;
  r.eigenvalues = es.eigenvalues();
  r.lambda1 = r.eigenvalues(0);
  r.lambda2 = r.eigenvalues(1);
  r.eigvec1 = es.eigenvectors().col(0);
  r.eigvec2 = es.eigenvectors().col(1);
  r.is_squeezed = r.lambda1 < 1.0 - tol::eigen;
  return r;
}

PassiveTransform::PassiveTransform(Eigen::MatrixXcd unitary, Eigen::MatrixXd real_form)
    : unitary_(std::move(unitary)), real_form_(std::move(real_form)) {}

PassiveTransform PassiveTransform::identity(int modes) {
  return passive_from_unitary(Eigen::MatrixXcd::Identity(modes, modes));
}

PassiveTransform PassiveTransform::then(const PassiveTransform& next) const {
  if (next.modes() != modes()) throw StructuralError("cannot compose passive transforms of different sizes");
  return passive_from_unitary(unitary_ * next.unitary_);
}

PassiveTransform PassiveTransform::inverse() const { return passive_from_unitary(unitary_.adjoint()); }

double unitarity_defect(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols() || u.rows() == 0) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

PassiveTransform passive_from_unitary(const Eigen::MatrixXcd& unitary) {
  if (unitary.rows() != unitary.cols() || unitary.rows() == 0)
    throw StructuralError("mode unitary must be a non-empty square matrix");
  const double defect = unitarity_defect(unitary);
  if (!(defect <= tol::unitarity)) {
    std::ostringstream msg;
    msg << "matrix is not unitary (max |U^dagger U - 1| = " << defect << ")";
    throw NonUnitaryError(msg.str(), defect);
  }
  const Eigen::Index n = unitary.rows();
  const Eigen::MatrixXd x = unitary.real();
  const Eigen::MatrixXd y = unitary.imag();
  Eigen::MatrixXd k(2 * n, 2 * n);
  k << x, y, -y, x;
  return PassiveTransform(unitary, std::move(k));
}

PassiveTransform mode_permutation(const std::vector<int>& source) {
  const int n = static_cast<int>(source.size());
  std::vector<bool> seen(n, false);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const int s = source[k];
    if (s < 0 || s >= n || seen[s]) throw StructuralError("mode_permutation: not a permutation");
    seen[s] = true;
    // Gamma' = K^T Gamma K picks Gamma'[k][l] = Gamma[s(k)][s(l)].
    u(s, k) = 1.0;
  }
  return passive_from_unitary(u);
}

PassiveTransform embed(const PassiveTransform& sub, int modes, const std::vector<int>& targets) {
  const int m = sub.modes();
  if (static_cast<int>(targets.size()) != m) throw StructuralError("embed: target count mismatch");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(modes, modes);
  for (int r = 0; r < m; ++r) {
    if (targets[r] < 0 || targets[r] >= modes) throw StructuralError("embed: target out of range");
    for (int c = 0; c < m; ++c) u(targets[r], targets[c]) = sub.unitary()(r, c);
  }
  return passive_from_unitary(u);
}

CovarianceMatrix apply_passive(const CovarianceMatrix& gamma, const PassiveTransform& k) {
  if (gamma.modes() != k.modes()) {
    std::ostringstream msg;
    msg << "passive transform acts on " << k.modes() << " modes, state has " << gamma.modes();
    throw StructuralError(msg.str());
  }
  const Eigen::MatrixXd& kk = k.real_form();
  return CovarianceMatrix(symmetrized(kk.transpose() * gamma.matrix() * kk));
}

ComplexModeVector complexify(const Eigen::VectorXd& v) {
  if (v.size() % 2 != 0) throw StructuralError("complexify: vector length must be even");
  const Eigen::Index n = v.size() / 2;
  ComplexModeVector psi(n);
  for (Eigen::Index k = 0; k < n; ++k) psi(k) = {v(k), v(n + k)};
  return psi;
}

Eigen::VectorXd realify(const ComplexModeVector& psi) {
  const Eigen::Index n = psi.size();
  Eigen::VectorXd v(2 * n);
  v.head(n) = psi.real();
  v.tail(n) = psi.imag();
  return v;
}

}  // namespace passent
