#ifndef PASSENT_STATES_HPP
#define PASSENT_STATES_HPP

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "passent/gaussian.hpp"

namespace passent::states {

/// Single-mode thermal state with squeezing: the covariance matrix
/// R(phase) diag(b e^{-2r}, b e^{2r}) R(phase)^T in (q, p), i.e. the
/// quadrature rotated by `phase` from Q carries the reduced variance.
Eigen::Matrix2d single_mode_block(double r, double phase = 0.0, double b = 1.0);

CovarianceMatrix vacuum(int modes);
CovarianceMatrix thermal(double b, int modes = 1);
CovarianceMatrix squeezed(double r, double phase = 0.0, double b = 1.0);

/// Product of single-mode states given as 2x2 (q, p) blocks.
CovarianceMatrix product(const std::vector<Eigen::Matrix2d>& blocks);

/// Two-mode state [[A, C], [C^T, B]] with A, B, C written per mode in (q, p)
/// order, returned in qqpp order.
CovarianceMatrix from_blocks(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b, const Eigen::Matrix2d& c);

/// A = a 1, B = b 1, C = diag(c, d).
CovarianceMatrix simon_form(double a, double b, double c, double d);

/// A = B = cosh(2r) 1, C = diag(-sinh 2r, sinh 2r).
CovarianceMatrix two_mode_squeezed(double r);

struct Vacuum {
  int modes = 1;
};
struct Thermal {
  double b = 1.0;
  int modes = 1;
};
struct Squeezed {
  double r = 0.0;
  double phase = 0.0;
  double b = 1.0;
};
struct Product {
  std::vector<Squeezed> modes;
};
struct Simon {
  double a = 1.0, b = 1.0, c = 0.0, d = 0.0;
};
struct TwoModeSqueezed {
  double r = 0.0;
};

using StateSpec = std::variant<Vacuum, Thermal, Squeezed, Product, Simon, TwoModeSqueezed>;

/// Builds the state and validates it; unphysical parameters raise
/// ValidityError naming the violated constraint.
CovarianceMatrix make_state(const StateSpec& spec);

}  // namespace passent::states

#endif  // PASSENT_STATES_HPP
