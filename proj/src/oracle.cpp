#include "passent/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace passent::oracle {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for sample `index`, fixed by the master seed alone.
Rng sample_rng(std::uint64_t seed, std::uint64_t index) { return Rng(splitmix64(seed ^ splitmix64(index + 1))); }

Eigen::MatrixXcd ginibre(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd z(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = {re, im};
    }
  return z;
}

/// exp(i t H) for Hermitian H.
Eigen::MatrixXcd unitary_step(const Eigen::MatrixXcd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) phases(k) = std::polar(1.0, t * es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

struct Candidate {
  Score score;
  std::size_t index = 0;
  bool valid = false;
};

Candidate best_in_range(const CovarianceMatrix& gamma, const SearchConfig& cfg, std::size_t begin, std::size_t end) {
  Candidate best;
  const int n = gamma.modes();
  for (std::size_t i = begin; i < end; ++i) {
    Rng rng = sample_rng(cfg.seed, i);
    const Score s = evaluate(gamma, haar_unitary(n, rng), cfg);
    if (!best.valid || s.better_than(best.score)) best = {s, i, true};
  }
  return best;
}

}  // namespace

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  if (n < 1) throw StructuralError("haar_unitary needs n >= 1");
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre(n, rng));
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const std::complex<double> d = r(k, k);
    const double a = std::abs(d);
    q.col(k) *= a > 0.0 ? d / a : std::complex<double>(1.0);
  }
  return q;
}

PassiveTransform random_passive(int n, Rng& rng) { return passive_from_unitary(haar_unitary(n, rng)); }

bool Score::better_than(const Score& other) const {
  if (negativity != other.negativity) return negativity > other.negativity;
  return min_symplectic < other.min_symplectic;
}

Score evaluate(const CovarianceMatrix& gamma, const Eigen::MatrixXcd& unitary, const SearchConfig& cfg) {
  const CovarianceMatrix moved = apply_passive(gamma, passive_from_unitary(unitary));
  if (cfg.objective == Objective::full_state) {
    const EntanglementReport r = entanglement_report_unchecked(moved, cfg.partition);
    return {r.log_negativity, r.spectrum.min()};
  }
  const int n = gamma.modes();
  const ModePartition pair = ModePartition::split(1, 1);
  Score best;
  bool have = false;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const EntanglementReport r = entanglement_report_unchecked(reduced_state(moved, {i, j}), pair);
      const Score s{r.log_negativity, r.spectrum.min()};
      if (!have || s.better_than(best)) {
        best = s;
        have = true;
      }
    }
  }
  return best;
}

SearchResult maximize_negativity(const CovarianceMatrix& gamma, const SearchConfig& cfg) {
  require_valid(gamma);
  const int n = gamma.modes();
  if (n < 2) throw StructuralError("maximize_negativity needs at least two modes");
  if (cfg.samples < 1) throw StructuralError("SearchConfig.samples must be >= 1");
  if (cfg.objective == Objective::full_state && cfg.partition.modes() != n)
    throw StructuralError("SearchConfig.partition does not match the number of modes");

  // Sampling phase. Ties go to the lowest sample index in both the serial and
  // the threaded path.
  Candidate best;
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.samples)));
  if (threads == 1) {
    best = best_in_range(gamma, cfg, 0, cfg.samples);
  } else {
    std::vector<Candidate> partial(threads);
    std::vector<std::thread> pool;
    const std::size_t chunk = (cfg.samples + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(cfg.samples, t * chunk);
      const std::size_t end = std::min(cfg.samples, begin + chunk);
      pool.emplace_back([&, t, begin, end] { partial[t] = best_in_range(gamma, cfg, begin, end); });
    }
    for (auto& th : pool) th.join();
    for (const auto& c : partial)
      if (c.valid && (!best.valid || c.score.better_than(best.score))) best = c;
  }

  SearchResult result;
  Rng winner = sample_rng(cfg.seed, best.index);
  result.best_unitary = haar_unitary(n, winner);
  Score current = best.score;
  result.evaluations = cfg.samples;

  // Greedy refinement: U <- U exp(i t H) for random Hermitian H, kept when
  // the score improves; the step grows on success and shrinks on failure.
  Rng rng(splitmix64(cfg.seed ^ 0x5eedf00dULL));
  double step = 0.2;
  for (std::size_t it = 0; it < cfg.refine_iters; ++it) {
    const Eigen::MatrixXcd g = ginibre(n, rng);
    Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
    h /= h.norm();
    const Eigen::MatrixXcd trial = result.best_unitary * unitary_step(h, step);
    const Score s = evaluate(gamma, trial, cfg);
    ++result.evaluations;
    if (s.better_than(current)) {
      current = s;
      result.best_unitary = trial;
      step = std::min(1.0, step * 1.5);
    } else {
      step = std::max(1e-8, step * 0.9);
    }
    if (cfg.record_history) result.history.push_back(current.negativity);
  }

  result.best_negativity_bits = current.negativity;
  result.best_min_symplectic = current.min_symplectic;
  return result;
}

VerdictCheck verify_criterion(const CovarianceMatrix& gamma, const SearchConfig& cfg) {
  VerdictCheck check;
  const SqueezingReport sq = squeezing_report(gamma);
  check.eigenvalue_product = sq.product();
  check.criterion_can_entangle = check.eigenvalue_product < 1.0;
  const SearchResult found = maximize_negativity(gamma, cfg);
  check.oracle_best_bits = found.best_negativity_bits;

  std::ostringstream msg;
  if (check.oracle_best_bits > oracle_tolerance && !check.criterion_can_entangle) {
    check.passed = false;
    check.discrepancy = check.oracle_best_bits;
    msg << "oracle reached E_N = " << check.oracle_best_bits << " bits although l1*l2 = " << check.eigenvalue_product
        << " >= 1";
  } else if (check.eigenvalue_product < 1.0 - criterion_margin && !(check.oracle_best_bits > 0.0)) {
    check.passed = false;
    check.discrepancy = 1.0 - check.eigenvalue_product;
    msg << "criterion predicts entanglement (l1*l2 = " << check.eigenvalue_product
        << ") but the oracle found none";
  } else {
    msg << "consistent: l1*l2 = " << check.eigenvalue_product << ", oracle best = " << check.oracle_best_bits
        << " bits";
  }
  check.message = msg.str();
  return check;
}

}  // namespace passent::oracle
