#pragma once

// Projective measurements, exact outcome probabilities and finite-shot
// sampling.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coherence/linalg.hpp"
#include "coherence/random.hpp"
#include "coherence/states.hpp"

namespace coherence {

// Ordered complete set of orthogonal projectors. Construction checks
// Hermiticity, idempotence, pairwise orthogonality and completeness to
// tol::kHermiticity and throws InvalidState otherwise.
class ProjectiveBasis {
 public:
  ProjectiveBasis(std::vector<ComplexMatrix> projectors, std::vector<std::string> labels);

  // Rank-one projectors |v_k><v_k| from (not necessarily normalized) vectors.
  static ProjectiveBasis from_vectors(const std::vector<ComplexVector>& vectors,
                                      std::vector<std::string> labels);

  int dim() const { return dim_; }
  std::size_t size() const { return projectors_.size(); }
  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }
  const ComplexMatrix& projector(std::size_t k) const { return projectors_.at(k); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  int dim_;
  std::vector<ComplexMatrix> projectors_;
  std::vector<std::string> labels_;
};

struct OutcomeDistribution {
  std::vector<double> probabilities;
};

struct CountRecord {
  std::vector<std::int64_t> counts;
  std::int64_t shots = 0;
  std::uint64_t seed_tag = 0;
};

enum class PauliAxis { X, Y, Z };

// |psi+>, |psi->, |phi+>, |phi-> in that order; labels M1..M4.
ProjectiveBasis bell_basis();

// Eigenprojectors of the Pauli operator, +1 outcome first.
ProjectiveBasis pauli_basis(PauliAxis axis);

// Eigenprojectors of cos(phi) sx + sin(phi) sy, +1 outcome first.
ProjectiveBasis equatorial_basis(double phi);

// Four mutually unbiased qutrit bases xi_{ij}, i = 0..3, j = 0..2: the
// computational basis followed by three Fourier-type bases.
std::vector<ProjectiveBasis> qutrit_mub_bases();

// Nine-outcome two-qutrit basis: |00>, |11>, |22>, then
// psi01+, psi01-, psi02+, psi02-, psi12+, psi12- with
// psi_ij^(+/-) = (|ij> +/- |ji>)/sqrt(2).
ProjectiveBasis two_qutrit_cms_basis();

// Index of psi_ij^+ in two_qutrit_cms_basis(); psi_ij^- follows it.
std::size_t cms_symmetric_index(int i, int j);

// p_k = Tr[M_k rho_total]. Dust below tol::kProbabilityDust is clipped to
// [0, 1] and the vector renormalized. Throws DimensionMismatch or
// InvalidState.
OutcomeDistribution outcome_probs(const ComplexMatrix& rho_total, const ProjectiveBasis& basis);

// `shots` independent categorical draws by inverse CDF: outcome k is the
// smallest index with u < cdf_k, u uniform in [0, 1).
CountRecord sample_counts(const OutcomeDistribution& dist, std::int64_t shots, RandomStream& rng);

}  // namespace coherence
