#include "coherence/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>
#include <tuple>

#include "coherence/errors.hpp"

namespace coherence {

namespace {

// Rank of each element in the sorted list of distinct values.
template <typename T, typename Less>
std::vector<std::size_t> canonical_ranks(const std::vector<T>& items, Less less) {
  std::vector<T> sorted = items;
  std::sort(sorted.begin(), sorted.end(), less);
  auto equal = [&](const T& a, const T& b) { return !less(a, b) && !less(b, a); };
  sorted.erase(std::unique(sorted.begin(), sorted.end(), equal), sorted.end());
  std::vector<std::size_t> ranks;
  ranks.reserve(items.size());
  for (const auto& item : items) {
    ranks.push_back(static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), item, less) - sorted.begin()));
  }
  return ranks;
}

bool scheme_less(const SchemeSpec& a, const SchemeSpec& b) {
  return std::tuple(a.kind, a.measure, a.adaptive.pilot_outside_budget, a.adaptive.step1_fraction) <
         std::tuple(b.kind, b.measure, b.adaptive.pilot_outside_budget, b.adaptive.step1_fraction);
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void run_cell(const SweepConfig& config, std::size_t grid_rank, std::size_t scheme_rank,
              SweepCell& cell) {
  const DensityMatrix rho = family_state(config.family, cell.parameter);
  cell.true_value = true_coherence(rho, cell.scheme.measure);
  std::vector<double> errors(static_cast<std::size_t>(config.repetitions));
  double estimate_sum = 0.0;
  for (int rep = 0; rep < config.repetitions; ++rep) {
    RandomStream rng(task_seed(config.master_seed, grid_rank, scheme_rank,
                               static_cast<std::size_t>(rep)));
    const Estimate e = config.exact_limit ? oracle_mode(cell.scheme, rho)
                                          : estimate(cell.scheme, rho, rng);
    errors[static_cast<std::size_t>(rep)] = std::abs(e.value - cell.true_value);
    estimate_sum += e.value;
    if (!e.mle_converged) ++cell.mle_nonconverged;
  }
  const double t = static_cast<double>(config.repetitions);
  double sum = 0.0;
  for (double e : errors) sum += e;
  const double mean = sum / t;
  double sq = 0.0;
  for (double e : errors) sq += (e - mean) * (e - mean);
  cell.mean_error = mean;
  cell.std_error = std::sqrt(sq / t);
  cell.mean_estimate = estimate_sum / t;
  cell.repetitions = config.repetitions;
}

}  // namespace

std::vector<double> default_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 12; ++k) grid.push_back(k * std::numbers::pi / 24.0);
  return grid;
}

void validate(const SweepConfig& config) {
  if (config.grid.empty()) throw ConfigError("grid is empty");
  for (double p : config.grid) {
    if (!(p >= 0.0 && p <= std::numbers::pi / 2)) {
      throw ConfigError("grid point " + format_real(p) + " outside [0, pi/2]");
    }
  }
  if (config.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (config.budget < 1) throw ConfigError("budget_N must be >= 1");
  if (config.schemes.empty()) throw ConfigError("no schemes configured");
  const int dim = config.family == StateFamily::QubitTheta ? 2 : 3;
  for (auto spec : config.schemes) {
    if (spec.dim() != dim) {
      throw ConfigError(spec.label() + " does not apply to the " +
                        std::string(to_string(config.family)) + " family");
    }
    spec.budget = config.budget;
    validate(spec);
  }
}

const SweepCell& SweepResult::cell(std::size_t grid_index, std::size_t scheme_index) const {
  return cells.at(grid_index * config.schemes.size() + scheme_index);
}

std::vector<SweepCell> SweepResult::scheme_cells(const SchemeSpec& scheme) const {
  SchemeSpec probe = scheme;
  probe.budget = config.budget;
  const auto it = std::find(config.schemes.begin(), config.schemes.end(), probe);
  if (it == config.schemes.end()) {
    throw UnknownScheme("scheme " + scheme.label() + "/" + std::string(to_string(scheme.measure)) +
                        " not in sweep result");
  }
  const auto s = static_cast<std::size_t>(it - config.schemes.begin());
  std::vector<SweepCell> out;
  for (std::size_t g = 0; g < config.grid.size(); ++g) out.push_back(cell(g, s));
  return out;
}

std::uint64_t task_seed(std::uint64_t master_seed, std::size_t grid_rank, std::size_t scheme_rank,
                        std::size_t repetition) {
  return hash64(master_seed, {grid_rank, scheme_rank, repetition});
}

SweepResult run_sweep(const SweepConfig& input) {
  SweepResult result;
  result.config = input;
  for (auto& spec : result.config.schemes) spec.budget = input.budget;
  const SweepConfig& config = result.config;
  validate(config);
  result.rng_algorithm = std::string(RandomStream::kAlgorithm);

  const auto grid_ranks = canonical_ranks(config.grid, std::less<double>{});
  const auto scheme_ranks = canonical_ranks(config.schemes, scheme_less);

  const std::size_t n_schemes = config.schemes.size();
  result.cells.resize(config.grid.size() * n_schemes);
  for (std::size_t g = 0; g < config.grid.size(); ++g) {
    for (std::size_t s = 0; s < n_schemes; ++s) {
      auto& cell = result.cells[g * n_schemes + s];
      cell.grid_index = g;
      cell.scheme_index = s;
      cell.parameter = config.grid[g];
      cell.scheme = config.schemes[s];
    }
  }

  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(result.cells.size()));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::string error_context;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= result.cells.size()) return;
      auto& cell = result.cells[i];
      try {
        run_cell(config, grid_ranks[cell.grid_index], scheme_ranks[cell.scheme_index], cell);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
          error_context = "grid point " + format_real(cell.parameter) + ", scheme " +
                          cell.scheme.label() + "/" + std::string(to_string(cell.scheme.measure));
        }
        failed = true;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      throw Error("sweep aborted at " + error_context + ": " + e.what());
    }
  }
  return result;
}

double average_over_grid(const SweepResult& result, const SchemeSpec& scheme) {
  const auto cells = result.scheme_cells(scheme);
  double sum = 0.0;
  for (const auto& c : cells) sum += c.mean_error;
  return sum / static_cast<double>(cells.size());
}

void write_csv(const SweepResult& result, std::ostream& out) {
  out << kCsvHeader << '\n';
  const auto& config = result.config;
  for (const auto& cell : result.cells) {
    out << to_string(config.family) << ',' << format_real(cell.parameter) << ','
        << cell.scheme.label() << ',' << to_string(cell.scheme.measure) << ',' << config.budget
        << ',' << cell.repetitions << ',' << format_real(cell.mean_error) << ','
        << format_real(cell.std_error) << ',' << config.master_seed << ','
        << result.rng_algorithm << '\n';
  }
}

}  // namespace coherence
