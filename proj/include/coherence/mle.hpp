#pragma once

// Maximum-likelihood state reconstruction by the iterative R rho R map
// (Hradil; Rehacek, Hradil, Jezek): starting from I/d, repeat
//   R = sum_k f_k / p_k(rho) Pi_k,   rho <- R rho R / Tr[R rho R]
// where f_k is the pooled relative frequency of outcome k over all bases.

#include <span>
#include <vector>

#include "coherence/measurement.hpp"
#include "coherence/states.hpp"

namespace coherence {

struct MleOptions {
  int max_iterations = 10000;
  // Stop once max |rho_{t+1} - rho_t| <= tolerance.
  double tolerance = 1e-10;
  bool record_log_likelihood = false;
};

struct MleResult {
  DensityMatrix rho;
  int iterations = 0;
  // False when max_iterations was reached; rho is then the last iterate.
  bool converged = false;
  // Sum_k f_k log p_k at the start and after every iteration, when recorded.
  std::vector<double> log_likelihood;
};

// Counts per basis; each basis is weighted by its share of the total shots.
// Throws NoData when no shots were taken and DimensionMismatch when counts
// and bases do not line up.
MleResult mle_rhor(std::span<const ProjectiveBasis> bases, std::span<const CountRecord> counts,
                   int dim, const MleOptions& options = {});

// Same map with per-basis relative frequencies (which may be non-integer
// expectations) and per-basis shot weights.
MleResult mle_rhor_frequencies(std::span<const ProjectiveBasis> bases,
                               std::span<const std::vector<double>> frequencies,
                               std::span<const double> shots, int dim,
                               const MleOptions& options = {});

// Sum_k f_k log p_k(rho) with the pooled frequencies used by the MLE.
double log_likelihood(std::span<const ProjectiveBasis> bases,
                      std::span<const std::vector<double>> frequencies,
                      std::span<const double> shots, const ComplexMatrix& rho);

}  // namespace coherence
