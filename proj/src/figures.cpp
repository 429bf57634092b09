#include "coherence/figures.hpp"

#include <cstdio>
#include <fstream>

#include "coherence/errors.hpp"
#include "coherence/svg.hpp"

namespace coherence {

namespace {

struct FigureDef {
  std::string name;
  std::string title;
  StateFamily family;
  Measure measure;
  std::vector<SchemeKind> kinds;
  std::vector<double> published;
  bool write_averages;
};

// The published adaptive curves are matched by a step-two measurement that
// spends the full budget, with an N/4 + N/4 pilot on top.
constexpr AdaptiveOptions kFigureAdaptive{0.5, true};

const std::vector<FigureDef>& definitions() {
  static const std::vector<FigureDef> defs = {
      {"fig1a", "Mean error, l1-norm of coherence (qubit)", StateFamily::QubitTheta, Measure::L1,
       {SchemeKind::CmsQubit, SchemeKind::DirectPauli, SchemeKind::Adaptive2Step,
        SchemeKind::TomoQubit},
       {}, false},
      {"fig1b", "Mean error, relative entropy of coherence (qubit)", StateFamily::QubitTheta,
       Measure::RelEnt, {SchemeKind::CmsQubit, SchemeKind::TomoQubit}, {}, false},
      {"fig2", "Grid-averaged mean error, l1-norm of coherence (qubit)", StateFamily::QubitTheta,
       Measure::L1,
       {SchemeKind::CmsQubit, SchemeKind::DirectPauli, SchemeKind::Adaptive2Step,
        SchemeKind::TomoQubit},
       {0.0263, 0.0234, 0.0156, 0.0176, 0.0187}, true},
      {"fig3", "Mean error, l1-norm of coherence (qutrit)", StateFamily::QutritAlpha, Measure::L1,
       {SchemeKind::CmsQutrit, SchemeKind::TomoQutrit}, {}, false},
      {"figS1", "Mean error, coherence of formation (qubit)", StateFamily::QubitTheta,
       Measure::Formation,
       {SchemeKind::CmsQubit, SchemeKind::DirectPauli, SchemeKind::Adaptive2Step,
        SchemeKind::TomoQubit},
       {0.0211, 0.0194, 0.0168, 0.0204, 0.0205}, true},
  };
  return defs;
}

const FigureDef& find(std::string_view name) {
  for (const auto& d : definitions()) {
    if (d.name == name) return d;
  }
  throw UnknownScheme("unknown figure '" + std::string(name) + "'");
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& d : definitions()) n.push_back(d.name);
    return n;
  }();
  return names;
}

bool is_figure(std::string_view name) {
  for (const auto& d : definitions()) {
    if (d.name == name) return true;
  }
  return false;
}

SweepConfig figure_config(std::string_view name, const FigureOptions& options) {
  const FigureDef& def = find(name);
  SweepConfig config;
  config.family = def.family;
  config.grid = default_grid();
  config.repetitions = options.repetitions;
  config.budget = options.shots;
  config.master_seed = options.seed;
  config.threads = options.threads;
  for (auto kind : def.kinds) {
    SchemeSpec spec{kind, def.measure, options.shots};
    if (kind == SchemeKind::Adaptive2Step) spec.adaptive = kFigureAdaptive;
    config.schemes.push_back(spec);
  }
  return config;
}

FigureOutput run_figure(std::string_view name, const FigureOptions& options) {
  const FigureDef& def = find(name);
  FigureOutput output;
  output.result = run_sweep(figure_config(name, options));
  for (const auto& spec : output.result.config.schemes) {
    output.averages.push_back({spec.label(), std::string(to_string(spec.measure)),
                               average_over_grid(output.result, spec)});
  }
  output.published = def.published;
  return output;
}

std::vector<std::filesystem::path> write_figure(std::string_view name, const FigureOutput& output,
                                                const std::filesystem::path& out_dir) {
  const FigureDef& def = find(name);
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  auto open = [&](const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    written.push_back(path);
    return out;
  };

  {
    auto out = open(out_dir / (def.name + ".csv"));
    write_csv(output.result, out);
    if (!out) throw Error("write failed for " + def.name + ".csv");
  }
  {
    auto out = open(out_dir / (def.name + ".svg"));
    write_svg(output.result, out, def.title);
    if (!out) throw Error("write failed for " + def.name + ".svg");
  }
  if (def.write_averages) {
    auto out = open(out_dir / (def.name + "_averages.csv"));
    out << "source,label,grid_average\n";
    for (const auto& a : output.averages) {
      out << "simulated," << a.scheme << '/' << a.measure << ',' << fmt9(a.value) << '\n';
    }
    for (std::size_t i = 0; i < output.published.size(); ++i) {
      out << "published,bar" << i + 1 << ',' << fmt9(output.published[i]) << '\n';
    }
    if (!out) throw Error("write failed for " + def.name + "_averages.csv");
  }
  return written;
}

}  // namespace coherence
