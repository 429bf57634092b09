#pragma once

// Coherence estimation pipelines. Every scheme maps a copy budget N and a
// true state to an estimated coherence value, either from sampled counts or,
// in oracle mode, from the exact expected frequencies.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coherence/measurement.hpp"
#include "coherence/mle.hpp"
#include "coherence/random.hpp"
#include "coherence/states.hpp"

namespace coherence {

enum class SchemeKind { CmsQubit, DirectPauli, Adaptive2Step, TomoQubit, CmsQutrit, TomoQutrit };
enum class Measure { L1, RelEnt, Formation };

std::string_view to_string(SchemeKind kind);
std::string_view to_string(Measure measure);
SchemeKind parse_scheme_kind(std::string_view name);
Measure parse_measure(std::string_view name);

// Shot allocation of the two-step adaptive scheme. Step one spends
// floor(N * step1_fraction / 2) shots on each of sx and sy.
//   pilot_outside_budget = false: step two gets the remaining copies, so the
//     whole run consumes N (default N/4 + N/4 + N/2).
//   pilot_outside_budget = true: step one is an extra pilot and step two
//     alone consumes N copies.
struct AdaptiveOptions {
  double step1_fraction = 0.5;
  bool pilot_outside_budget = false;

  friend bool operator==(const AdaptiveOptions&, const AdaptiveOptions&) = default;
};

struct SchemeSpec {
  SchemeKind kind = SchemeKind::CmsQubit;
  Measure measure = Measure::L1;
  std::int64_t budget = 0;
  AdaptiveOptions adaptive{};

  // "CmsQubit", or "Adaptive2Step+pilot" for the pilot-outside-budget variant.
  std::string label() const;
  int dim() const;

  friend bool operator==(const SchemeSpec&, const SchemeSpec&) = default;
};

// Throws UnsupportedMeasure or BadBudget when the combination is invalid.
void validate(const SchemeSpec& spec);

struct Estimate {
  double value = 0.0;
  std::vector<std::pair<std::string, double>> intermediate;
  std::int64_t copies_used = 0;
  // Only meaningful for tomographic schemes.
  bool mle_converged = true;

  double intermediate_value(std::string_view name) const;
};

// Supplies relative outcome frequencies for `shots` uses of `basis` on the
// (possibly two-copy) state `rho_total`.
class FrequencySource {
 public:
  virtual ~FrequencySource() = default;
  virtual std::vector<double> frequencies(const ComplexMatrix& rho_total,
                                          const ProjectiveBasis& basis, std::int64_t shots) = 0;
};

// Multinomial sampling via sample_counts.
class SampledSource final : public FrequencySource {
 public:
  explicit SampledSource(RandomStream& rng) : rng_(rng) {}
  std::vector<double> frequencies(const ComplexMatrix& rho_total, const ProjectiveBasis& basis,
                                  std::int64_t shots) override;

 private:
  RandomStream& rng_;
};

// Exact outcome probabilities (infinite-sample limit).
class ExactSource final : public FrequencySource {
 public:
  std::vector<double> frequencies(const ComplexMatrix& rho_total, const ProjectiveBasis& basis,
                                  std::int64_t shots) override;
};

// ---- data-level estimators ------------------------------------------------

// Bell-basis frequencies (P1..P4) to an estimate.
Estimate cms_qubit_from_frequencies(const std::array<double, 4>& p, Measure measure);

// Two-qutrit CMS-basis frequencies, ordered as two_qutrit_cms_basis().
Estimate cms_qutrit_from_frequencies(std::span<const double> p);

// Frequencies of the +1 outcome for sx and sy.
Estimate direct_pauli_from_frequencies(double fx_plus, double fy_plus, Measure measure);

// Measure evaluated on a reconstructed qubit state.
double qubit_measure(const DensityMatrix& rho, Measure measure);

// ---- sampling pipelines ---------------------------------------------------

Estimate estimate_cms_qubit(const DensityMatrix& rho, std::int64_t budget, Measure measure,
                            FrequencySource& source);
Estimate estimate_direct_pauli(const DensityMatrix& rho, std::int64_t budget, Measure measure,
                               FrequencySource& source);
Estimate estimate_adaptive(const DensityMatrix& rho, std::int64_t budget, Measure measure,
                           FrequencySource& source, const AdaptiveOptions& options = {});
Estimate estimate_tomo_qubit(const DensityMatrix& rho, std::int64_t budget, Measure measure,
                             FrequencySource& source, const MleOptions& mle = {});
Estimate estimate_cms_qutrit(const DensityMatrix& rho, std::int64_t budget,
                             FrequencySource& source);
Estimate estimate_tomo_qutrit(const DensityMatrix& rho, std::int64_t budget,
                              FrequencySource& source, const MleOptions& mle = {});

// Dispatch on spec.kind with sampled counts drawn from `rng`.
Estimate estimate(const SchemeSpec& spec, const DensityMatrix& rho, RandomStream& rng);

// Dispatch on spec.kind with exact expected frequencies.
Estimate oracle_mode(const SchemeSpec& spec, const DensityMatrix& rho);

// Exact value of `measure` for rho; Formation requires a qubit.
double true_coherence(const DensityMatrix& rho, Measure measure);

}  // namespace coherence
