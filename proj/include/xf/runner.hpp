#pragma once

#include <string>
#include <vector>

#include "xf/config.hpp"
#include "xf/record.hpp"

namespace xf {

// Dispatches the config to its owning module and assembles the full result
// record (points, constants, verdicts, provenance). Does not touch the
// filesystem. exit_code is prefilled: 0, or 2 for a certificate that fails
// to contract.
ResultRecord run_experiment(const ExperimentConfig& c);

// run_experiment + record.json + points.csv + the experiment's default
// plots, all under c.output_dir. Returns the process exit code.
int run_and_write(const ExperimentConfig& c);

std::vector<std::string> default_plot_kinds(ExperimentKind k);

} // namespace xf
