#include "coherence/mle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coherence/errors.hpp"

namespace coherence {

namespace {

// Frequencies pooled over bases: f_k = freq_k * shots_b / sum_b shots_b.
struct PooledData {
  std::vector<ComplexMatrix> projectors;
  std::vector<double> weights;
};

PooledData pool(std::span<const ProjectiveBasis> bases,
                std::span<const std::vector<double>> frequencies, std::span<const double> shots,
                int dim) {
  if (bases.size() != frequencies.size() || bases.size() != shots.size()) {
    throw DimensionMismatch("MLE: bases, frequencies and shots differ in length");
  }
  double total = 0.0;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    if (bases[b].dim() != dim) throw DimensionMismatch("MLE: basis dimension mismatch");
    if (frequencies[b].size() != bases[b].size()) {
      throw DimensionMismatch("MLE: frequency vector does not match basis " + std::to_string(b));
    }
    if (shots[b] < 0.0) throw NoData("MLE: negative shot weight");
    total += shots[b];
  }
  if (!(total > 0.0)) throw NoData("MLE: no shots recorded");

  PooledData data;
  double mass = 0.0;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    for (std::size_t k = 0; k < bases[b].size(); ++k) {
      const double f = std::max(0.0, frequencies[b][k]) * shots[b] / total;
      if (f <= 0.0) continue;
      data.projectors.push_back(bases[b].projector(k));
      data.weights.push_back(f);
      mass += f;
    }
  }
  if (!(mass > 0.0)) throw NoData("MLE: all frequencies are zero");
  return data;
}

template <int D>
MleResult iterate(const PooledData& data, int dim, const MleOptions& options) {
  using Mat = Eigen::Matrix<Complex, D, D>;
  static constexpr double kMinProbability = 1e-300;

  std::vector<Mat> projectors;
  projectors.reserve(data.projectors.size());
  for (const auto& p : data.projectors) projectors.push_back(p);

  auto probability = [](const Mat& p, const Mat& rho) {
    return std::max(kMinProbability, (p.cwiseProduct(rho.transpose())).sum().real());
  };
  auto loglik = [&](const Mat& rho) {
    double l = 0.0;
    for (std::size_t k = 0; k < projectors.size(); ++k) {
      l += data.weights[k] * std::log(probability(projectors[k], rho));
    }
    return l;
  };

  Mat rho = Mat::Identity(dim, dim) / static_cast<double>(dim);
  MleResult result{DensityMatrix::maximally_mixed(dim), 0, false, {}};
  if (options.record_log_likelihood) result.log_likelihood.push_back(loglik(rho));

  Mat r(dim, dim);
  for (int it = 1; it <= options.max_iterations; ++it) {
    r.setZero();
    for (std::size_t k = 0; k < projectors.size(); ++k) {
      r += (data.weights[k] / probability(projectors[k], rho)) * projectors[k];
    }
    Mat next = r * rho * r;
    next /= next.trace().real();
    next = (0.5 * (next + next.adjoint())).eval();
    const double change = (next - rho).cwiseAbs().maxCoeff();
    rho = next;
    result.iterations = it;
    if (options.record_log_likelihood) result.log_likelihood.push_back(loglik(rho));
    if (change <= options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.rho = DensityMatrix(ComplexMatrix(rho));
  return result;
}

}  // namespace

MleResult mle_rhor_frequencies(std::span<const ProjectiveBasis> bases,
                               std::span<const std::vector<double>> frequencies,
                               std::span<const double> shots, int dim,
                               const MleOptions& options) {
  if (dim < 1) throw WrongDimension("MLE: dimension must be positive");
  const PooledData data = pool(bases, frequencies, shots, dim);
  switch (dim) {
    case 2: return iterate<2>(data, dim, options);
    case 3: return iterate<3>(data, dim, options);
    default: return iterate<Eigen::Dynamic>(data, dim, options);
  }
}

MleResult mle_rhor(std::span<const ProjectiveBasis> bases, std::span<const CountRecord> counts,
                   int dim, const MleOptions& options) {
  if (bases.size() != counts.size()) {
    throw DimensionMismatch("MLE: one count record per basis required");
  }
  std::vector<std::vector<double>> frequencies;
  std::vector<double> shots;
  for (const auto& record : counts) {
    std::vector<double> f(record.counts.size(), 0.0);
    if (record.shots > 0) {
      for (std::size_t k = 0; k < f.size(); ++k) {
        f[k] = static_cast<double>(record.counts[k]) / static_cast<double>(record.shots);
      }
    }
    frequencies.push_back(std::move(f));
    shots.push_back(static_cast<double>(record.shots));
  }
  return mle_rhor_frequencies(bases, frequencies, shots, dim, options);
}

double log_likelihood(std::span<const ProjectiveBasis> bases,
                      std::span<const std::vector<double>> frequencies,
                      std::span<const double> shots, const ComplexMatrix& rho) {
  const PooledData data = pool(bases, frequencies, shots, static_cast<int>(rho.rows()));
  double l = 0.0;
  for (std::size_t k = 0; k < data.projectors.size(); ++k) {
    const double p = (data.projectors[k].cwiseProduct(rho.transpose())).sum().real();
    l += data.weights[k] * std::log(std::max(1e-300, p));
  }
  return l;
}

}  // namespace coherence
