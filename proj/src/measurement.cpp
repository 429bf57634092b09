#include "coherence/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "coherence/errors.hpp"

namespace coherence {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

ComplexVector vec(std::initializer_list<Complex> entries) {
  ComplexVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const auto& e : entries) v(i++) = e;
  return v;
}

ComplexVector basis_vector(int dim, int index) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

}  // namespace

ProjectiveBasis::ProjectiveBasis(std::vector<ComplexMatrix> projectors,
                                 std::vector<std::string> labels)
    : dim_(0), projectors_(std::move(projectors)), labels_(std::move(labels)) {
  if (projectors_.empty()) throw InvalidState("projective basis needs at least one projector");
  if (labels_.size() != projectors_.size()) {
    throw InvalidState("projective basis: label count differs from projector count");
  }
  dim_ = static_cast<int>(projectors_.front().rows());
  ComplexMatrix total = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t k = 0; k < projectors_.size(); ++k) {
    const auto& p = projectors_[k];
    if (p.rows() != dim_ || p.cols() != dim_) {
      throw InvalidState("projective basis: projector dimensions differ");
    }
    if (!is_hermitian(p)) throw InvalidState("projector " + labels_[k] + " not Hermitian");
    if (max_abs_diff(p * p, p) > tol::kHermiticity) {
      throw InvalidState("projector " + labels_[k] + " not idempotent");
    }
    for (std::size_t l = 0; l < k; ++l) {
      if ((projectors_[l] * p).cwiseAbs().maxCoeff() > tol::kHermiticity) {
        throw InvalidState("projectors " + labels_[l] + " and " + labels_[k] +
                           " not orthogonal");
      }
    }
    total += p;
  }
  if (max_abs_diff(total, ComplexMatrix::Identity(dim_, dim_)) > tol::kHermiticity) {
    throw InvalidState("projective basis incomplete");
  }
}

ProjectiveBasis ProjectiveBasis::from_vectors(const std::vector<ComplexVector>& vectors,
                                              std::vector<std::string> labels) {
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(vectors.size());
  for (const auto& v : vectors) {
    const ComplexVector u = v / v.norm();
    projectors.push_back(u * u.adjoint());
  }
  return ProjectiveBasis(std::move(projectors), std::move(labels));
}

ProjectiveBasis bell_basis() {
  const double s = kInvSqrt2;
  return ProjectiveBasis::from_vectors(
      {vec({0, s, s, 0}), vec({0, s, -s, 0}), vec({s, 0, 0, s}), vec({s, 0, 0, -s})},
      {"M1", "M2", "M3", "M4"});
}

ProjectiveBasis pauli_basis(PauliAxis axis) {
  const double s = kInvSqrt2;
  const Complex i(0, 1);
  switch (axis) {
    case PauliAxis::X:
      return ProjectiveBasis::from_vectors({vec({s, s}), vec({s, -s})}, {"x+", "x-"});
    case PauliAxis::Y:
      return ProjectiveBasis::from_vectors({vec({s, i * s}), vec({s, -i * s})}, {"y+", "y-"});
    case PauliAxis::Z:
      break;
  }
  return ProjectiveBasis::from_vectors({vec({1, 0}), vec({0, 1})}, {"z+", "z-"});
}

ProjectiveBasis equatorial_basis(double phi) {
  const double s = kInvSqrt2;
  const Complex phase = std::polar(1.0, phi);
  return ProjectiveBasis::from_vectors({vec({s, s * phase}), vec({s, -s * phase})},
                                       {"phi+", "phi-"});
}

std::vector<ProjectiveBasis> qutrit_mub_bases() {
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const Complex wb = std::conj(w);
  const std::vector<std::vector<ComplexVector>> vectors = {
      {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})},
      {vec({1, 1, 1}), vec({1, w, wb}), vec({1, wb, w})},
      {vec({w, 1, 1}), vec({1, w, 1}), vec({1, 1, w})},
      {vec({wb, 1, 1}), vec({1, wb, 1}), vec({1, 1, wb})},
  };
  std::vector<ProjectiveBasis> bases;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < 3; ++j) {
      labels.push_back("xi" + std::to_string(i) + std::to_string(j));
    }
    bases.push_back(ProjectiveBasis::from_vectors(vectors[i], std::move(labels)));
  }
  return bases;
}

std::size_t cms_symmetric_index(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == j || i < 0 || j > 2) throw OutOfRange("cms_symmetric_index needs 0 <= i < j <= 2");
  // (0,1) -> 3, (0,2) -> 5, (1,2) -> 7
  return static_cast<std::size_t>(3 + 2 * (i + j - 1));
}

ProjectiveBasis two_qutrit_cms_basis() {
  auto ket = [](int a, int b) { return basis_vector(9, 3 * a + b); };
  std::vector<ComplexVector> vectors = {ket(0, 0), ket(1, 1), ket(2, 2)};
  std::vector<std::string> labels = {"00", "11", "22"};
  for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const std::string tag = std::to_string(i) + std::to_string(j);
    vectors.push_back((ket(i, j) + ket(j, i)) * kInvSqrt2);
    labels.push_back("psi" + tag + "+");
    vectors.push_back((ket(i, j) - ket(j, i)) * kInvSqrt2);
    labels.push_back("psi" + tag + "-");
  }
  return ProjectiveBasis::from_vectors(vectors, std::move(labels));
}

OutcomeDistribution outcome_probs(const ComplexMatrix& rho_total, const ProjectiveBasis& basis) {
  if (rho_total.rows() != basis.dim() || rho_total.cols() != basis.dim()) {
    throw DimensionMismatch("state dimension " + std::to_string(rho_total.rows()) +
                            " does not match basis dimension " + std::to_string(basis.dim()));
  }
  validate_density_matrix(rho_total);
  OutcomeDistribution dist;
  dist.probabilities.reserve(basis.size());
  double total = 0.0;
  for (const auto& m : basis.projectors()) {
    const double p = (m.cwiseProduct(rho_total.transpose())).sum().real();
    if (p < -tol::kProbabilityDust || p > 1.0 + tol::kProbabilityDust) {
      throw InvalidState("outcome probability " + std::to_string(p) + " outside [0, 1]");
    }
    const double clipped = p < tol::kProbabilityDust ? 0.0 : std::min(p, 1.0);
    dist.probabilities.push_back(clipped);
    total += clipped;
  }
  if (std::abs(total - 1.0) > tol::kTrace) {
    throw InvalidState("outcome probabilities sum to " + std::to_string(total));
  }
  for (double& p : dist.probabilities) p /= total;
  return dist;
}

CountRecord sample_counts(const OutcomeDistribution& dist, std::int64_t shots, RandomStream& rng) {
  if (shots < 0) throw BadBudget("negative shot count");
  const auto& probs = dist.probabilities;
  CountRecord record;
  record.counts.assign(probs.size(), 0);
  record.shots = shots;
  record.seed_tag = rng.seed();
  if (shots == 0 || probs.empty()) return record;

  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double p = std::abs(probs[k]) < tol::kProbabilityDust ? 0.0 : probs[k];
    if (p < 0.0) throw InvalidState("negative outcome probability");
    if (p > 0.0) last_positive = k;
    acc += p;
    cdf[k] = acc;
  }
  if (!(acc > 0.0)) throw InvalidState("outcome distribution has no mass");

  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t k =
        it == cdf.end() ? last_positive : static_cast<std::size_t>(it - cdf.begin());
    ++record.counts[k];
  }
  return record;
}

}  // namespace coherence
