#pragma once

// Canonical sweeps behind the published figures: N = 1200 copies,
// T = 1000 repetitions, the default 13-point grid and master seed 20200101.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "coherence/harness.hpp"

namespace coherence {

inline constexpr std::uint64_t kFigureSeed = 20200101;

struct FigureOptions {
  std::uint64_t seed = kFigureSeed;
  int repetitions = 1000;
  std::int64_t shots = 1200;
  int threads = 0;
};

struct SchemeAverage {
  std::string scheme;
  std::string measure;
  double value = 0.0;
};

struct FigureOutput {
  SweepResult result;
  std::vector<SchemeAverage> averages;  // grid averages per scheme
  std::vector<double> published;        // published reference averages, if any
};

// fig1a, fig1b, fig2, fig3, figS1.
const std::vector<std::string>& figure_names();
bool is_figure(std::string_view name);

// Throws UnknownScheme for an unrecognized name.
SweepConfig figure_config(std::string_view name, const FigureOptions& options = {});

FigureOutput run_figure(std::string_view name, const FigureOptions& options = {});

// Writes <name>.csv and <name>.svg, plus <name>_averages.csv for fig2 and
// figS1. Returns the paths written.
std::vector<std::filesystem::path> write_figure(std::string_view name, const FigureOutput& output,
                                                const std::filesystem::path& out_dir);

}  // namespace coherence
