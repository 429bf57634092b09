#pragma once

// Monte Carlo sweeps over a state-family grid. Each (grid point, scheme,
// repetition) task draws from its own RandomStream seeded with
//   hash64(master_seed, {grid_rank, scheme_rank, repetition})
// where the ranks are positions in the canonically sorted grid and scheme
// lists, so results do not depend on the order given or on scheduling.

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

#include "coherence/estimation.hpp"
#include "coherence/states.hpp"

namespace coherence {

// k * pi / 24 for k = 0..12.
std::vector<double> default_grid();

struct SweepConfig {
  StateFamily family = StateFamily::QubitTheta;
  std::vector<double> grid = default_grid();
  // Budgets inside the specs are overwritten with budget.
  std::vector<SchemeSpec> schemes;
  int repetitions = 1000;
  std::int64_t budget = 1200;
  std::uint64_t master_seed = 0;
  // Use exact expected frequencies instead of sampled counts.
  bool exact_limit = false;
  // 0 selects std::thread::hardware_concurrency().
  int threads = 0;
};

// Throws ConfigError for an empty grid, out-of-range points, T < 1 or no
// schemes; scheme-level problems surface as the scheme's own errors.
void validate(const SweepConfig& config);

struct SweepCell {
  std::size_t grid_index = 0;
  std::size_t scheme_index = 0;
  double parameter = 0.0;
  SchemeSpec scheme;
  double true_value = 0.0;
  double mean_error = 0.0;
  // Population standard deviation (divide by T) of the per-repetition errors.
  double std_error = 0.0;
  double mean_estimate = 0.0;
  int repetitions = 0;
  int mle_nonconverged = 0;
};

struct SweepResult {
  SweepConfig config;
  std::string rng_algorithm;
  // Row-major: grid points in config order, schemes in config order.
  std::vector<SweepCell> cells;

  const SweepCell& cell(std::size_t grid_index, std::size_t scheme_index) const;
  // Cells of one scheme across the grid, in grid order. Throws UnknownScheme.
  std::vector<SweepCell> scheme_cells(const SchemeSpec& scheme) const;
};

std::uint64_t task_seed(std::uint64_t master_seed, std::size_t grid_rank, std::size_t scheme_rank,
                        std::size_t repetition);

SweepResult run_sweep(const SweepConfig& config);

// Unweighted mean of mean_error over the grid. Throws UnknownScheme.
double average_over_grid(const SweepResult& result, const SchemeSpec& scheme);

inline constexpr const char* kCsvHeader =
    "family,parameter_rad,scheme,measure,budget_N,repetitions,mean_error,std_error,master_seed,"
    "rng_algo";

// One row per (grid point, scheme); reals with 9 significant digits.
void write_csv(const SweepResult& result, std::ostream& out);

}  // namespace coherence
