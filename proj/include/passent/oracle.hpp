#ifndef PASSENT_ORACLE_HPP
#define PASSENT_ORACLE_HPP

// Brute-force check of the closed-form results: maximise the logarithmic
// negativity over the passive group by random Haar sampling followed by a
// greedy local search. Uses only the core and entanglement modules.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "passent/entanglement.hpp"
#include "passent/gaussian.hpp"

namespace passent::oracle {

using Rng = std::mt19937_64;

/// Haar-random n x n unitary: QR of a complex Ginibre matrix with the phases
/// of diag(R) divided out.
Eigen::MatrixXcd haar_unitary(int n, Rng& rng);

PassiveTransform random_passive(int n, Rng& rng);

enum class Objective {
  full_state,             ///< E_N of K^T Gamma K across the configured split
  best_two_mode_subsystem ///< max over mode pairs (i | j) of the reduced state's E_N
};

struct SearchConfig {
  std::size_t samples = 5000;
  std::size_t refine_iters = 2000;
  std::uint64_t seed = 0;
  ModePartition partition = ModePartition::split(1, 1);
  Objective objective = Objective::full_state;
  /// Worker threads for the sampling phase; results do not depend on it.
  unsigned threads = 1;
  bool record_history = false;
};

struct SearchResult {
  double best_negativity_bits = 0.0;
  /// Smallest symplectic eigenvalue of the partial transpose at the optimum.
  double best_min_symplectic = 0.0;
  Eigen::MatrixXcd best_unitary;
  std::vector<double> history;  ///< best value after each refinement step
  std::size_t evaluations = 0;
};

/// Objective value of one candidate unitary.
struct Score {
  double negativity = 0.0;
  double min_symplectic = 0.0;
  /// Lexicographic: more negativity, then a smaller symplectic eigenvalue.
  bool better_than(const Score& other) const;
};

Score evaluate(const CovarianceMatrix& gamma, const Eigen::MatrixXcd& unitary, const SearchConfig& cfg);

SearchResult maximize_negativity(const CovarianceMatrix& gamma, const SearchConfig& cfg);

struct VerdictCheck {
  double eigenvalue_product = 0.0;
  bool criterion_can_entangle = false;
  double oracle_best_bits = 0.0;
  bool passed = true;
  double discrepancy = 0.0;
  std::string message;
};

inline constexpr double criterion_margin = 1e-3;
inline constexpr double oracle_tolerance = 1e-6;

/// Oracle finding vs. the l1 * l2 < 1 criterion. Failures are reported in
/// the returned record, not thrown.
VerdictCheck verify_criterion(const CovarianceMatrix& gamma, const SearchConfig& cfg);

}  // namespace passent::oracle

#endif  // PASSENT_ORACLE_HPP
