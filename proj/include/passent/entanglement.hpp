#ifndef PASSENT_ENTANGLEMENT_HPP
#define PASSENT_ENTANGLEMENT_HPP

#include <string>
#include <vector>

#include "passent/gaussian.hpp"

namespace passent {

/// Split of n modes into parties A and B. Mode indices are 0-based. Party B
/// is the side whose momenta are reversed by the partial transpose.
class ModePartition {
 public:
  /// Party A = modes 0..n_a-1, party B = the next n_b modes.
  static ModePartition split(int n_a, int n_b);
  /// Arbitrary split; together the two lists must cover 0..n-1 exactly once.
  static ModePartition from_modes(std::vector<int> party_a, std::vector<int> party_b);
  /// First floor(n/2) modes against the rest.
  static ModePartition halves(int modes);

  int modes() const noexcept { return static_cast<int>(a_.size() + b_.size()); }
  int size_a() const noexcept { return static_cast<int>(a_.size()); }
  int size_b() const noexcept { return static_cast<int>(b_.size()); }
  const std::vector<int>& party_a() const noexcept { return a_; }
  const std::vector<int>& party_b() const noexcept { return b_; }

  bool contiguous() const;
  /// PPT is equivalent to separability when one party holds a single mode.
  bool ppt_decides_separability() const noexcept { return size_a() == 1 || size_b() == 1; }

  /// Mode permutation that moves party A to the front (in listed order),
  /// followed by party B.
  PassiveTransform canonical_order() const;

  /// "1,3:2,4" style, 1-based.
  std::string to_string() const;

 private:
  ModePartition(std::vector<int> a, std::vector<int> b) : a_(std::move(a)), b_(std::move(b)) {}
  std::vector<int> a_;
  std::vector<int> b_;
};

/// Reverses the momenta of party B: (1_n + E) Gamma (1_n + E). The result
/// is in general not a physical covariance matrix.
CovarianceMatrix partial_transpose(const CovarianceMatrix& gamma, const ModePartition& part);

struct SymplecticSpectrum {
  std::vector<double> values;  ///< n values, ascending
  double min() const { return values.front(); }
};

/// Symplectic eigenvalues of a positive-definite matrix: the square roots of
/// the doubly degenerate eigenvalues of -(Gamma sigma)^2, each reported once.
SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& gamma);

struct EntanglementReport {
  SymplecticSpectrum spectrum;  ///< of the partial transpose
  double log_negativity = 0.0;  ///< bits
  bool is_nppt = false;
  bool separability_decided = true;  ///< false when PPT says nothing about separability

  std::string label() const;
};

EntanglementReport entanglement_report(const CovarianceMatrix& gamma, const ModePartition& part);

/// As entanglement_report, without the physicality check of `gamma`. For
/// callers that evaluate many transforms of one already-validated state.
EntanglementReport entanglement_report_unchecked(const CovarianceMatrix& gamma, const ModePartition& part);

}  // namespace passent

#endif  // PASSENT_ENTANGLEMENT_HPP
