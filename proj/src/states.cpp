#include "passent/states.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace passent::states {

namespace {

void require_occupation(double b) {
  if (!(b >= 1.0)) {
    std::ostringstream msg;
    msg << "thermal factor b must satisfy b >= 1, got " << b;
    throw ValidityError(msg.str(), 1.0 - b);
  }
}

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw ValidityError(std::string(name) + " must be finite", 0.0);
}

CovarianceMatrix checked(CovarianceMatrix gamma, const std::string& what) {
  const ValidityVerdict v = validate(gamma);
  if (!v.ok()) {
    std::ostringstream msg;
    msg << what << " is not a physical covariance matrix: Gamma + i sigma >= 0 violated (min eigenvalue "
        << v.min_eigenvalue << ")";
    throw ValidityError(msg.str(), v.violation());
  }
  return gamma;
}

}  // namespace

Eigen::Matrix2d single_mode_block(double r, double phase, double b) {
  require_finite(r, "squeezing r");
  require_finite(phase, "phase");
  require_occupation(b);
  const Eigen::Matrix2d rot = Eigen::Rotation2Dd(phase).toRotationMatrix();
  const Eigen::Vector2d diag(b * std::exp(-2.0 * r), b * std::exp(2.0 * r));
  return rot * diag.asDiagonal() * rot.transpose();
}

CovarianceMatrix vacuum(int modes) {
  if (modes < 1) throw StructuralError("vacuum needs at least one mode");
  return CovarianceMatrix(Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

CovarianceMatrix thermal(double b, int modes) {
  require_occupation(b);
  if (modes < 1) throw StructuralError("thermal state needs at least one mode");
  return CovarianceMatrix(b * Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

CovarianceMatrix squeezed(double r, double phase, double b) { return product({single_mode_block(r, phase, b)}); }

CovarianceMatrix product(const std::vector<Eigen::Matrix2d>& blocks) {
  const int n = static_cast<int>(blocks.size());
  if (n == 0) throw StructuralError("product state needs at least one mode");
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    g(k, k) = blocks[k](0, 0);
    g(k, n + k) = blocks[k](0, 1);
    g(n + k, k) = blocks[k](1, 0);
    g(n + k, n + k) = blocks[k](1, 1);
  }
  return checked(CovarianceMatrix(std::move(g)), "product state");
}

CovarianceMatrix from_blocks(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b, const Eigen::Matrix2d& c) {
  // qqpp index of (mode, quadrature): q_A=0, q_B=1, p_A=2, p_B=3.
  Eigen::Matrix4d g;
  const int ia[2] = {0, 2};
  const int ib[2] = {1, 3};
  for (int r = 0; r < 2; ++r) {
    for (int s = 0; s < 2; ++s) {
      g(ia[r], ia[s]) = a(r, s);
      g(ib[r], ib[s]) = b(r, s);
      g(ia[r], ib[s]) = c(r, s);
      g(ib[s], ia[r]) = c(r, s);
    }
  }
  return CovarianceMatrix(Eigen::MatrixXd(g));
}

CovarianceMatrix simon_form(double a, double b, double c, double d) {
  for (double x : {a, b, c, d}) require_finite(x, "simon_form parameter");
  const Eigen::Matrix2d c_block = Eigen::Vector2d(c, d).asDiagonal();
  std::ostringstream what;
  what << "simon_form(a=" << a << ", b=" << b << ", c=" << c << ", d=" << d << ")";
  return checked(from_blocks(a * Eigen::Matrix2d::Identity(), b * Eigen::Matrix2d::Identity(), c_block),
                 what.str());
}

CovarianceMatrix two_mode_squeezed(double r) {
  require_finite(r, "squeezing r");
  const double a = std::cosh(2.0 * r);
  const double c = std::sinh(2.0 * r);
  return simon_form(a, a, -c, c);
}

CovarianceMatrix make_state(const StateSpec& spec) {
  struct Visitor {
    CovarianceMatrix operator()(const Vacuum& s) const { return vacuum(s.modes); }
    CovarianceMatrix operator()(const Thermal& s) const { return thermal(s.b, s.modes); }
    CovarianceMatrix operator()(const Squeezed& s) const { return squeezed(s.r, s.phase, s.b); }
    CovarianceMatrix operator()(const Product& s) const {
      std::vector<Eigen::Matrix2d> blocks;
      for (const auto& m : s.modes) blocks.push_back(single_mode_block(m.r, m.phase, m.b));
      return product(blocks);
    }
    CovarianceMatrix operator()(const Simon& s) const { return simon_form(s.a, s.b, s.c, s.d); }
    CovarianceMatrix operator()(const TwoModeSqueezed& s) const { return two_mode_squeezed(s.r); }
  };
  return std::visit(Visitor{}, spec);
}

}  // namespace passent::states
