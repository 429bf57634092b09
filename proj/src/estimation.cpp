#include "coherence/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coherence/errors.hpp"

namespace coherence {

namespace {

double sqrt_clamped(double radicand) { return std::sqrt(std::max(0.0, radicand)); }

void require_dim(const DensityMatrix& rho, int dim, std::string_view scheme) {
  if (rho.dim() != dim) {
    throw WrongDimension(std::string(scheme) + " needs a state of dimension " +
                         std::to_string(dim));
  }
}

void require_pauli_measure(Measure measure, std::string_view scheme) {
  if (measure == Measure::RelEnt) {
    throw UnsupportedMeasure(std::string(scheme) + " cannot estimate RelEnt");
  }
}

double l1_to_measure(double l1, Measure measure) {
  return measure == Measure::Formation ? c_formation_from_offdiag(l1 / 2.0) : l1;
}

// Frequency of the +1 outcome of a two-outcome Pauli-type basis on rho.
double plus_frequency(FrequencySource& source, const DensityMatrix& rho,
                      const ProjectiveBasis& basis, std::int64_t shots) {
  return source.frequencies(rho.matrix(), basis, shots).at(0);
}

const ProjectiveBasis& pauli(PauliAxis axis) {
  static const ProjectiveBasis x = pauli_basis(PauliAxis::X);
  static const ProjectiveBasis y = pauli_basis(PauliAxis::Y);
  static const ProjectiveBasis z = pauli_basis(PauliAxis::Z);
  return axis == PauliAxis::X ? x : axis == PauliAxis::Y ? y : z;
}

}  // namespace

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::CmsQubit: return "CmsQubit";
    case SchemeKind::DirectPauli: return "DirectPauli";
    case SchemeKind::Adaptive2Step: return "Adaptive2Step";
    case SchemeKind::TomoQubit: return "TomoQubit";
    case SchemeKind::CmsQutrit: return "CmsQutrit";
    case SchemeKind::TomoQutrit: return "TomoQutrit";
  }
  return "?";
}

std::string_view to_string(Measure measure) {
  switch (measure) {
    case Measure::L1: return "L1";
    case Measure::RelEnt: return "RelEnt";
    case Measure::Formation: return "Formation";
  }
  return "?";
}

SchemeKind parse_scheme_kind(std::string_view name) {
  for (auto kind : {SchemeKind::CmsQubit, SchemeKind::DirectPauli, SchemeKind::Adaptive2Step,
                    SchemeKind::TomoQubit, SchemeKind::CmsQutrit, SchemeKind::TomoQutrit}) {
    if (to_string(kind) == name) return kind;
  }
  throw UnknownScheme("unknown scheme '" + std::string(name) + "'");
}

Measure parse_measure(std::string_view name) {
  for (auto m : {Measure::L1, Measure::RelEnt, Measure::Formation}) {
    if (to_string(m) == name) return m;
  }
  throw UnsupportedMeasure("unknown measure '" + std::string(name) + "'");
}

std::string SchemeSpec::label() const {
  std::string s(to_string(kind));
  if (kind == SchemeKind::Adaptive2Step && adaptive.pilot_outside_budget) s += "+pilot";
  return s;
}

int SchemeSpec::dim() const {
  return kind == SchemeKind::CmsQutrit || kind == SchemeKind::TomoQutrit ? 3 : 2;
}

void validate(const SchemeSpec& spec) {
  const auto name = to_string(spec.kind);
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw BadBudget(std::string(name) + ": " + what);
  };
  switch (spec.kind) {
    case SchemeKind::CmsQubit:
    case SchemeKind::CmsQutrit:
      need(spec.budget >= 2 && spec.budget % 2 == 0, "budget must be even and >= 2");
      break;
    case SchemeKind::DirectPauli:
      need(spec.budget >= 2, "budget must be >= 2");
      break;
    case SchemeKind::Adaptive2Step:
      need(spec.budget >= 4, "budget must be >= 4");
      if (!(spec.adaptive.step1_fraction > 0.0 && spec.adaptive.step1_fraction < 1.0)) {
        throw BadBudget("Adaptive2Step: step-1 fraction must lie in (0, 1)");
      }
      break;
    case SchemeKind::TomoQubit:
      need(spec.budget >= 3, "budget must be >= 3");
      break;
    case SchemeKind::TomoQutrit:
      need(spec.budget >= 4, "budget must be >= 4");
      break;
  }
  if (spec.dim() == 3 && spec.measure != Measure::L1) {
    throw UnsupportedMeasure(std::string(name) + " estimates L1 only");
  }
  if (spec.kind == SchemeKind::DirectPauli || spec.kind == SchemeKind::Adaptive2Step) {
    require_pauli_measure(spec.measure, name);
  }
}

double Estimate::intermediate_value(std::string_view name) const {
  for (const auto& [key, value] : intermediate) {
    if (key == name) return value;
  }
  throw std::out_of_range("no intermediate value '" + std::string(name) + "'");
}

std::vector<double> SampledSource::frequencies(const ComplexMatrix& rho_total,
                                               const ProjectiveBasis& basis,
                                               std::int64_t shots) {
  const CountRecord record = sample_counts(outcome_probs(rho_total, basis), shots, rng_);
  std::vector<double> f(record.counts.size(), 0.0);
  if (shots == 0) return f;
  for (std::size_t k = 0; k < f.size(); ++k) {
    f[k] = static_cast<double>(record.counts[k]) / static_cast<double>(shots);
  }
  return f;
}

std::vector<double> ExactSource::frequencies(const ComplexMatrix& rho_total,
                                             const ProjectiveBasis& basis, std::int64_t) {
  return outcome_probs(rho_total, basis).probabilities;
}

Estimate cms_qubit_from_frequencies(const std::array<double, 4>& p, Measure measure) {
  const double l1 = std::min(1.0, sqrt_clamped(2.0 * (p[0] - p[1])));
  const double r = std::min(1.0, sqrt_clamped(1.0 - 4.0 * p[1]));
  const double rz = std::min(sqrt_clamped(2.0 * (p[2] + p[3]) - 1.0), r);

  Estimate e;
  e.intermediate = {{"P1", p[0]}, {"P2", p[1]}, {"P3", p[2]}, {"P4", p[3]},
                    {"l1", l1},   {"r", r},     {"abs_rz", rz}};
  switch (measure) {
    case Measure::L1:
      e.value = l1;
      break;
    case Measure::RelEnt:
      e.value = std::clamp(binary_entropy((1.0 + rz) / 2.0) - binary_entropy((1.0 + r) / 2.0),
                           0.0, 1.0);
      break;
    case Measure::Formation:
      e.value = c_formation_from_offdiag(l1 / 2.0);
      break;
  }
  return e;
}

Estimate cms_qutrit_from_frequencies(std::span<const double> p) {
  if (p.size() != 9) throw DimensionMismatch("qutrit CMS needs 9 outcome frequencies");
  Estimate e;
  double sum = 0.0;
  for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const std::size_t k = cms_symmetric_index(i, j);
    const double offdiag = sqrt_clamped((p[k] - p[k + 1]) / 2.0);
    e.intermediate.emplace_back("abs_rho" + std::to_string(i) + std::to_string(j), offdiag);
    sum += offdiag;
  }
  e.value = std::clamp(2.0 * sum, 0.0, 2.0);
  return e;
}

Estimate direct_pauli_from_frequencies(double fx_plus, double fy_plus, Measure measure) {
  require_pauli_measure(measure, "DirectPauli");
  const double rx = 2.0 * fx_plus - 1.0;
  const double ry = 2.0 * fy_plus - 1.0;
  const double l1 = std::min(1.0, std::hypot(rx, ry));
  Estimate e;
  e.intermediate = {{"rx", rx}, {"ry", ry}, {"l1", l1}};
  e.value = l1_to_measure(l1, measure);
  return e;
}

double qubit_measure(const DensityMatrix& rho, Measure measure) {
  require_dim(rho, 2, "qubit measure");
  switch (measure) {
    case Measure::L1: return std::clamp(c_l1(rho), 0.0, 1.0);
    case Measure::RelEnt: return c_rel_ent(rho);
    case Measure::Formation: return c_formation_qubit(rho);
  }
  return 0.0;
}

double true_coherence(const DensityMatrix& rho, Measure measure) {
  switch (measure) {
    case Measure::L1: return c_l1(rho);
    case Measure::RelEnt: return c_rel_ent(rho);
    case Measure::Formation: return c_formation_qubit(rho);
  }
  return 0.0;
}

Estimate estimate_cms_qubit(const DensityMatrix& rho, std::int64_t budget, Measure measure,
                            FrequencySource& source) {
  require_dim(rho, 2, "CmsQubit");
  validate(SchemeSpec{SchemeKind::CmsQubit, measure, budget});
  static const ProjectiveBasis bell = bell_basis();
  const std::int64_t pairs = budget / 2;
  const auto f = source.frequencies(kron(rho.matrix(), rho.matrix()), bell, pairs);
  Estimate e = cms_qubit_from_frequencies({f[0], f[1], f[2], f[3]}, measure);
  e.copies_used = 2 * pairs;
  return e;
}

Estimate estimate_direct_pauli(const DensityMatrix& rho, std::int64_t budget, Measure measure,
                               FrequencySource& source) {
  require_dim(rho, 2, "DirectPauli");
  validate(SchemeSpec{SchemeKind::DirectPauli, measure, budget});
  const std::int64_t ny = budget / 2;
  const std::int64_t nx = budget - ny;
  const double fx = plus_frequency(source, rho, pauli(PauliAxis::X), nx);
  const double fy = plus_frequency(source, rho, pauli(PauliAxis::Y), ny);
  Estimate e = direct_pauli_from_frequencies(fx, fy, measure);
  e.copies_used = nx + ny;
  return e;
}

Estimate estimate_adaptive(const DensityMatrix& rho, std::int64_t budget, Measure measure,
                           FrequencySource& source, const AdaptiveOptions& options) {
  require_dim(rho, 2, "Adaptive2Step");
  validate(SchemeSpec{SchemeKind::Adaptive2Step, measure, budget, options});
  const auto per_axis = static_cast<std::int64_t>(
      std::floor(static_cast<double>(budget) * options.step1_fraction / 2.0));
  const std::int64_t step2 = options.pilot_outside_budget ? budget : budget - 2 * per_axis;
  if (per_axis < 1 || step2 < 1) {
    throw BadBudget("Adaptive2Step: budget too small for the requested split");
  }

  const double rx = 2.0 * plus_frequency(source, rho, pauli(PauliAxis::X), per_axis) - 1.0;
  const double ry = 2.0 * plus_frequency(source, rho, pauli(PauliAxis::Y), per_axis) - 1.0;
  const double phi = (rx == 0.0 && ry == 0.0) ? 0.0 : std::atan2(ry, rx);

  const double expectation =
      2.0 * plus_frequency(source, rho, equatorial_basis(phi), step2) - 1.0;
  const double abs_rho01 = std::min(0.5, std::abs(expectation) / 2.0);

  Estimate e;
  e.intermediate = {{"rx", rx}, {"ry", ry}, {"phi", phi}, {"expectation", expectation},
                    {"abs_rho01", abs_rho01}};
  e.value = l1_to_measure(2.0 * abs_rho01, measure);
  e.copies_used = 2 * per_axis + step2;
  return e;
}

Estimate estimate_tomo_qubit(const DensityMatrix& rho, std::int64_t budget, Measure measure,
                             FrequencySource& source, const MleOptions& mle) {
  require_dim(rho, 2, "TomoQubit");
  validate(SchemeSpec{SchemeKind::TomoQubit, measure, budget});
  static const std::vector<ProjectiveBasis> bases = {
      pauli(PauliAxis::X), pauli(PauliAxis::Y), pauli(PauliAxis::Z)};
  const std::int64_t n = budget / 3;
  const std::vector<double> shots = {static_cast<double>(n), static_cast<double>(n),
                                     static_cast<double>(budget - 2 * n)};
  std::vector<std::vector<double>> freqs;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    freqs.push_back(source.frequencies(rho.matrix(), bases[b], static_cast<std::int64_t>(shots[b])));
  }
  const MleResult fit = mle_rhor_frequencies(bases, freqs, shots, 2, mle);
  Estimate e;
  e.value = qubit_measure(fit.rho, measure);
  e.mle_converged = fit.converged;
  e.intermediate = {{"mle_iterations", static_cast<double>(fit.iterations)},
                    {"rho01_abs", std::abs(fit.rho(0, 1))}};
  e.copies_used = budget;
  return e;
}

Estimate estimate_cms_qutrit(const DensityMatrix& rho, std::int64_t budget,
                             FrequencySource& source) {
  require_dim(rho, 3, "CmsQutrit");
  validate(SchemeSpec{SchemeKind::CmsQutrit, Measure::L1, budget});
  static const ProjectiveBasis basis = two_qutrit_cms_basis();
  const std::int64_t pairs = budget / 2;
  const auto f = source.frequencies(kron(rho.matrix(), rho.matrix()), basis, pairs);
  Estimate e = cms_qutrit_from_frequencies(f);
  e.copies_used = 2 * pairs;
  return e;
}

Estimate estimate_tomo_qutrit(const DensityMatrix& rho, std::int64_t budget,
                              FrequencySource& source, const MleOptions& mle) {
  require_dim(rho, 3, "TomoQutrit");
  validate(SchemeSpec{SchemeKind::TomoQutrit, Measure::L1, budget});
  static const std::vector<ProjectiveBasis> bases = qutrit_mub_bases();
  const std::int64_t n = budget / 4;
  std::vector<double> shots(4, static_cast<double>(n));
  shots[0] = static_cast<double>(budget - 3 * n);
  std::vector<std::vector<double>> freqs;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    freqs.push_back(source.frequencies(rho.matrix(), bases[b], static_cast<std::int64_t>(shots[b])));
  }
  const MleResult fit = mle_rhor_frequencies(bases, freqs, shots, 3, mle);
  Estimate e;
  e.value = std::clamp(c_l1(fit.rho), 0.0, 2.0);
  e.mle_converged = fit.converged;
  e.intermediate = {{"mle_iterations", static_cast<double>(fit.iterations)}};
  e.copies_used = budget;
  return e;
}

namespace {

Estimate dispatch(const SchemeSpec& spec, const DensityMatrix& rho, FrequencySource& source) {
  validate(spec);
  switch (spec.kind) {
    case SchemeKind::CmsQubit:
      return estimate_cms_qubit(rho, spec.budget, spec.measure, source);
    case SchemeKind::DirectPauli:
      return estimate_direct_pauli(rho, spec.budget, spec.measure, source);
    case SchemeKind::Adaptive2Step:
      return estimate_adaptive(rho, spec.budget, spec.measure, source, spec.adaptive);
    case SchemeKind::TomoQubit:
      return estimate_tomo_qubit(rho, spec.budget, spec.measure, source);
    case SchemeKind::CmsQutrit:
      return estimate_cms_qutrit(rho, spec.budget, source);
    case SchemeKind::TomoQutrit:
      return estimate_tomo_qutrit(rho, spec.budget, source);
  }
  throw UnknownScheme("unhandled scheme kind");
}

}  // namespace

Estimate estimate(const SchemeSpec& spec, const DensityMatrix& rho, RandomStream& rng) {
  SampledSource source(rng);
  return dispatch(spec, rho, source);
}

Estimate oracle_mode(const SchemeSpec& spec, const DensityMatrix& rho) {
  ExactSource source;
  return dispatch(spec, rho, source);
}

}  // namespace coherence
