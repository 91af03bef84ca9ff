#pragma once

#include <string>
#include <vector>

#include "xf/record.hpp"

namespace xf {

// SVG renderings of a result record. Kinds:
//   "decay"      log-log norm vs lambda, fitted line, reference envelope
//   "absorption" log-log norm vs 1/nu, one trace per lambda
//   "unbounded"  value vs 2n+1 with the 16(2n+1)/130 line
// Throws EmptyRecord when the record has no rows and ValidationError when a
// kind needs a column the record lacks. Output is deterministic.
std::string render_plot(const ResultRecord& r, const std::string& kind);

// Renders each kind to dir/plots/<kind>.svg; returns the paths written.
std::vector<std::string> emit_plots(const ResultRecord& r,
                                    const std::vector<std::string>& kinds,
                                    const std::string& dir);

} // namespace xf
