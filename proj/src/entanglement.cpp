#include "passent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace passent {

ModePartition ModePartition::split(int n_a, int n_b) {
  if (n_a < 1 || n_b < 1) throw StructuralError("each party needs at least one mode");
  std::vector<int> a(n_a), b(n_b);
  for (int k = 0; k < n_a; ++k) a[k] = k;
  for (int k = 0; k < n_b; ++k) b[k] = n_a + k;
  return ModePartition(std::move(a), std::move(b));
}

ModePartition ModePartition::from_modes(std::vector<int> party_a, std::vector<int> party_b) {
  if (party_a.empty() || party_b.empty()) throw StructuralError("each party needs at least one mode");
  const int n = static_cast<int>(party_a.size() + party_b.size());
  std::vector<bool> seen(n, false);
  for (const auto* party : {&party_a, &party_b}) {
    for (int k : *party) {
      if (k < 0 || k >= n) {
        std::ostringstream msg;
        msg << "partition mode " << k + 1 << " out of range for " << n << " modes";
        throw StructuralError(msg.str());
      }
      if (seen[k]) {
        std::ostringstream msg;
        msg << "partition lists mode " << k + 1 << " twice";
        throw StructuralError(msg.str());
      }
      seen[k] = true;
    }
  }
  return ModePartition(std::move(party_a), std::move(party_b));
}

ModePartition ModePartition::halves(int modes) {
  if (modes < 2) throw StructuralError("a bipartition needs at least two modes");
  return split(modes / 2, modes - modes / 2);
}

bool ModePartition::contiguous() const {
  for (int k = 0; k < size_a(); ++k)
    if (a_[k] != k) return false;
  for (int k = 0; k < size_b(); ++k)
    if (b_[k] != size_a() + k) return false;
  return true;
}

PassiveTransform ModePartition::canonical_order() const {
  std::vector<int> source = a_;
  source.insert(source.end(), b_.begin(), b_.end());
  return mode_permutation(source);
}

std::string ModePartition::to_string() const {
  std::ostringstream out;
  for (int k = 0; k < size_a(); ++k) out << (k ? "," : "") << a_[k] + 1;
  out << ':';
  for (int k = 0; k < size_b(); ++k) out << (k ? "," : "") << b_[k] + 1;
  return out.str();
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma, const ModePartition& part) {
  if (gamma.modes() != part.modes()) {
    std::ostringstream msg;
    msg << "partition covers " << part.modes() << " modes, state has " << gamma.modes();
    throw StructuralError(msg.str());
  }
  Eigen::MatrixXd g = gamma.matrix();
  const int n = gamma.modes();
  for (int k : part.party_b()) {
    g.row(n + k) *= -1.0;
    g.col(n + k) *= -1.0;
  }
  return CovarianceMatrix(std::move(g));
}

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& gamma) {
  const int n = gamma.modes();
  const Eigen::MatrixXd g = 0.5 * (gamma.matrix() + gamma.matrix().transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  if (es.info() != Eigen::Success) throw NumericalDomainError("symplectic_spectrum: eigendecomposition failed");
  if (!(es.eigenvalues().minCoeff() > 0.0)) {
    std::ostringstream msg;
    msg << "symplectic_spectrum needs a positive-definite matrix (min eigenvalue " << es.eigenvalues().minCoeff()
        << ")";
    throw NumericalDomainError(msg.str());
  }
  // -(G sigma)^2 is similar to A^T A with A = G^{1/2} sigma G^{1/2}, which is
  // symmetric positive definite and keeps the degenerate pairs exact.
  const Eigen::MatrixXd root =
      es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  const Eigen::MatrixXd a = root * symplectic_form(n) * root;
  const Eigen::MatrixXd m = a.transpose() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sq(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = sq.eigenvalues();

  SymplecticSpectrum s;
  s.values.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double lo = ev(2 * k);
    const double hi = ev(2 * k + 1);
    if (std::abs(hi - lo) > 1e-7 * std::max({std::abs(lo), std::abs(hi), 1e-300})) {
      std::ostringstream msg;
      msg << "symplectic_spectrum: eigenvalues " << lo << " and " << hi << " do not pair";
      throw NumericalDomainError(msg.str());
    }
    s.values.push_back(std::sqrt(0.5 * (lo + hi)));
  }
  return s;
}

std::string EntanglementReport::label() const {
  if (is_nppt) return "NPPT (entangled, distillable)";
  return separability_decided ? "PPT (separable)" : "PPT (separability undetermined)";
}

EntanglementReport entanglement_report_unchecked(const CovarianceMatrix& gamma, const ModePartition& part) {
  EntanglementReport r;
  r.spectrum = symplectic_spectrum(partial_transpose(gamma, part));
  double en = 0.0;
  for (double s : r.spectrum.values) en -= std::min(0.0, std::log2(s));
  r.log_negativity = en;
  r.is_nppt = r.spectrum.min() < 1.0 - tol::eigen;
  r.separability_decided = r.is_nppt || part.ppt_decides_separability();
  return r;
}

EntanglementReport entanglement_report(const CovarianceMatrix& gamma, const ModePartition& part) {
  require_valid(gamma);
  return entanglement_report_unchecked(gamma, part);
}

}  // namespace passent
