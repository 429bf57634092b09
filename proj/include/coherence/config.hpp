#pragma once

// Flat `key = value` sweep configuration; `#` starts a comment.
//
//   family          qubit | qutrit                      (required)
//   schemes         Kind:Measure[,Kind:Measure...]      (required)
//                   e.g. CmsQubit:L1, TomoQutrit:L1
//   master_seed     unsigned 64-bit integer             (required)
//   repetitions     T >= 1                              (default 1000)
//   budget_N        copies per estimate                 (default 1200)
//   grid            default | comma-separated radians   (default k*pi/24)
//   adaptive_step1_fraction   (0, 1)                    (default 0.5)
//   adaptive_pilot  within_budget | outside_budget      (default within_budget)
//   exact_limit     true | false                        (default false)
//   threads         worker threads, 0 = all cores       (default 0)

#include <istream>
#include <string>
#include <string_view>

#include "coherence/harness.hpp"

namespace coherence {

// Throws ConfigError on syntax errors, unknown or duplicate keys, missing
// required keys and malformed values.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

// A real number, or a multiple of pi written as "pi", "pi/8" or "3*pi/8".
double parse_angle(std::string_view text);

}  // namespace coherence
