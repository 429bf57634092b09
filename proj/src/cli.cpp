#include "coherence/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "coherence/config.hpp"
#include "coherence/errors.hpp"
#include "coherence/figures.hpp"
#include "coherence/harness.hpp"
#include "coherence/measurement.hpp"
#include "coherence/svg.hpp"

namespace coherence::cli {

namespace {

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  // Avoid printing "-0".
  return std::string(buf) == "-0" ? "0" : buf;
}

// Usage-level failure: malformed arguments or configuration.
struct UsageError : Error {
  using Error::Error;
};

int cmd_sweep(const std::string& config_path, const std::string& csv_path,
              const std::string& svg_path, std::ostream& out) {
  SweepConfig config;
  try {
    config = load_sweep_config(config_path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const SweepResult result = run_sweep(config);
  {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw Error("cannot write '" + csv_path + "'");
    write_csv(result, csv);
    if (!csv) throw Error("write failed for '" + csv_path + "'");
  }
  if (!svg_path.empty()) {
    std::ofstream svg(svg_path, std::ios::binary);
    if (!svg) throw Error("cannot write '" + svg_path + "'");
    write_svg(result, svg, "Mean error (" + std::string(to_string(config.family)) + ")");
    if (!svg) throw Error("write failed for '" + svg_path + "'");
  }
  out << "wrote " << result.cells.size() << " rows to " << csv_path << '\n';
  return kExitOk;
}

void print_probs(std::ostream& out, const OutcomeDistribution& dist,
                 const ProjectiveBasis& basis) {
  out << "outcomes = (";
  for (std::size_t k = 0; k < basis.size(); ++k) out << (k ? ", " : "") << basis.labels()[k];
  out << ")\nP = (";
  for (std::size_t k = 0; k < dist.probabilities.size(); ++k) {
    out << (k ? ", " : "") << fmt9(dist.probabilities[k]);
  }
  out << ")\n";
}

int cmd_probs(const std::string& family, const std::string& theta, const std::string& alpha,
              const std::string& bloch, std::ostream& out) {
  std::optional<DensityMatrix> rho;
  try {
    if (!bloch.empty()) {
      if (!family.empty() && family != "qubit") {
        throw UsageError("--bloch describes a qubit state");
      }
      std::vector<double> r;
      std::stringstream ss(bloch);
      std::string item;
      while (std::getline(ss, item, ',')) r.push_back(parse_angle(item));
      if (r.size() != 3) throw UsageError("--bloch expects x,y,z");
      rho = from_bloch({r[0], r[1], r[2]});
      out << "state: qubit bloch=(" << fmt9(r[0]) << ", " << fmt9(r[1]) << ", " << fmt9(r[2])
          << ")\n";
    } else if (family == "qubit") {
      if (theta.empty() || !alpha.empty()) throw UsageError("qubit family needs --theta");
      const double t = parse_angle(theta);
      rho = qubit_family(t);
      out << "state: qubit theta=" << fmt9(t) << '\n';
    } else if (family == "qutrit") {
      if (alpha.empty() || !theta.empty()) throw UsageError("qutrit family needs --alpha");
      const double a = parse_angle(alpha);
      rho = qutrit_family(a);
      out << "state: qutrit alpha=" << fmt9(a) << '\n';
    } else {
      throw UsageError("give --family qubit|qutrit with --theta/--alpha, or --bloch x,y,z");
    }
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  const ComplexMatrix two_copy = kron(rho->matrix(), rho->matrix());
  if (rho->dim() == 2) {
    static const ProjectiveBasis bell = bell_basis();
    out << "basis: bell\n";
    print_probs(out, outcome_probs(two_copy, bell), bell);
    out << "C_l1 = " << fmt9(c_l1(*rho)) << '\n';
    out << "C_r = " << fmt9(c_rel_ent(*rho)) << '\n';
    out << "C_f = " << fmt9(c_formation_qubit(*rho)) << '\n';
  } else {
    static const ProjectiveBasis basis = two_qutrit_cms_basis();
    out << "basis: two-qutrit symmetric/antisymmetric\n";
    print_probs(out, outcome_probs(two_copy, basis), basis);
    out << "C_l1 = " << fmt9(c_l1(*rho)) << '\n';
    out << "C_r = " << fmt9(c_rel_ent(*rho)) << '\n';
  }
  return kExitOk;
}

int cmd_figure(const std::string& name, const std::string& out_dir, const FigureOptions& options,
               std::ostream& out) {
  if (!is_figure(name)) throw UsageError("unknown figure '" + name + "'");
  const FigureOutput output = run_figure(name, options);
  std::vector<std::filesystem::path> paths;
  try {
    paths = write_figure(name, output, out_dir);
  } catch (const std::filesystem::filesystem_error& e) {
    throw Error(e.what());
  }
  for (const auto& a : output.averages) {
    out << a.scheme << '/' << a.measure << " grid average = " << fmt9(a.value) << '\n';
  }
  if (!output.published.empty()) {
    out << "published bar values:";
    for (double v : output.published) out << ' ' << fmt9(v);
    out << '\n';
  }
  for (const auto& p : paths) out << "wrote " << p.string() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherence estimation benchmark: collective two-copy measurements versus "
               "Pauli, adaptive and tomographic schemes",
               "coherence-bench"};
  app.require_subcommand(1);

  std::string config_path, csv_path, svg_path;
  auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep from a config file");
  sweep->add_option("--config", config_path, "key = value configuration file")->required();
  sweep->add_option("--csv", csv_path, "output CSV path")->required();
  sweep->add_option("--svg", svg_path, "optional SVG line chart path");

  std::string family, theta, alpha, bloch;
  auto* probs = app.add_subcommand("probs", "Print exact two-copy outcome probabilities");
  probs->add_option("--family", family, "qubit | qutrit");
  probs->add_option("--theta", theta, "qubit family angle (rad, e.g. 0.5236 or pi/6)");
  probs->add_option("--alpha", alpha, "qutrit family angle (rad)");
  probs->add_option("--bloch", bloch, "qubit Bloch vector x,y,z");

  std::string figure_name, out_dir;
  FigureOptions fig_options;
  auto* figure = app.add_subcommand("figure", "Reproduce a published figure");
  figure->add_option("name", figure_name, "fig1a | fig1b | fig2 | fig3 | figS1")->required();
  figure->add_option("--out", out_dir, "output directory")->required();
  figure->add_option("--seed", fig_options.seed, "master seed");
  figure->add_option("--reps", fig_options.repetitions, "repetitions T")
      ->check(CLI::PositiveNumber);
  figure->add_option("--shots", fig_options.shots, "copy budget N")->check(CLI::PositiveNumber);
  figure->add_option("--threads", fig_options.threads, "worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sweep) return cmd_sweep(config_path, csv_path, svg_path, out);
    if (*probs) return cmd_probs(family, theta, alpha, bloch, out);
    if (*figure) return cmd_figure(figure_name, out_dir, fig_options, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace coherence::cli
