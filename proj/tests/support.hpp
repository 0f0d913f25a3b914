#ifndef PASSENT_TESTS_SUPPORT_HPP
#define PASSENT_TESTS_SUPPORT_HPP

// Random states and transforms shared by the unit and acceptance tests.

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "passent/gaussian.hpp"
#include "passent/oracle.hpp"

namespace passent::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Eigen::MatrixXd random_passive_real(int n, Rng& rng) { return oracle::random_passive(n, rng).real_form(); }

/// K1 diag(e^-r, e^r) K2 with random passive K1, K2 and single-mode squeezing
/// r_k in [0, max_r]. Generic symplectic by the Bloch-Messiah decomposition.
inline Eigen::MatrixXd random_symplectic(int n, Rng& rng, double max_r = 0.6) {
  Eigen::VectorXd d(2 * n);
  for (int k = 0; k < n; ++k) {
    const double r = uniform(rng, 0.0, max_r);
    d(k) = std::exp(-r);
    d(n + k) = std::exp(r);
  }
  return random_passive_real(n, rng) * d.asDiagonal() * random_passive_real(n, rng);
}

/// S^T diag(nu, nu) S: a random valid state with symplectic spectrum nu.
inline CovarianceMatrix random_state(int n, Rng& rng, double max_r = 0.6, double max_nu = 2.0) {
  Eigen::VectorXd nu(2 * n);
  for (int k = 0; k < n; ++k) nu(k) = nu(n + k) = uniform(rng, 1.0, max_nu);
  const Eigen::MatrixXd s = random_symplectic(n, rng, max_r);
  Eigen::MatrixXd g = s.transpose() * nu.asDiagonal() * s;
  return CovarianceMatrix(0.5 * (g + g.transpose()));
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace passent::testing

#endif  // PASSENT_TESTS_SUPPORT_HPP
