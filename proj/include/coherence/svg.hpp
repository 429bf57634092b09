#pragma once

#include <iosfwd>
#include <string>

#include "coherence/harness.hpp"

namespace coherence {

// Line chart of mean_error against the grid parameter: one polyline per
// scheme with the standard deviation drawn as vertical ticks.
void write_svg(const SweepResult& result, std::ostream& out, const std::string& title);

}  // namespace coherence
