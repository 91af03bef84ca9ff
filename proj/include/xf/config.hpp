#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xf/grid.hpp"
#include "xf/potential.hpp"

namespace xf {

enum class ExperimentKind {
  resolvent_scan,
  mourre_scan,
  weighted_mourre_scan,
  certificate,
  detector,
  propagator_validate,
  unboundedness_demo,
  diagnostics
};

std::string experiment_name(ExperimentKind k);
ExperimentKind experiment_from_name(const std::string& name);

// One experiment per file. Sections [grid], [potential], [weights], [scan];
// the top level holds experiment, seed and output_dir. Every key has a
// default except experiment.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::diagnostics;
  std::uint32_t seed = 42;
  std::string output_dir = ".";

  // [grid]
  double box_half = 30.0;
  int n = 256;
  Backend backend = Backend::fd_dirichlet;

  // [potential]
  PotentialKind potential = PotentialKind::none;
  double amplitude = 0.5; // strip A0
  double s_decay = 0.6;
  double strip_eta0 = 0.5;
  double strip_beta = 0.0;
  double well_depth = 2.0;
  double well_width = 1.0;
  bool stark_term = true; // drop the +x term for the translation-invariant control

  // [weights]
  std::string weight_kind = "radial"; // radial | strip | identity
  double delta = 1.0;
  double gamma = 0.4;
  double eta0 = 0.1;
  double beta = 0.0;
  double weight_a = 2.0;

  // [scan]
  double lambda_min = 20.0;
  double lambda_max = 200.0;
  int lambda_points = 8;
  std::string spacing = "log"; // log | linear
  double nu_min = 0.5;
  double nu_max = 0.5;
  int nu_points = 1;
  double theta = 0.25;
  double R = 5.0;
  double c_rg = 0.0; // certificate inputs; 0 means measure them first
  double b_rg = 0.0;
  double shift = 1.0; // eigensolve target for diagnostics
  std::vector<double> t_list{0.2, 0.5, 1.0};
  std::vector<int> n_list{0, 5, 10, 20, 40};

  Grid2D grid() const;
  PotentialSpec potential_spec() const;
  std::vector<double> lambda_grid() const;
  std::vector<double> nu_grid() const;
};

// Parse + validate + defaults. ParseError carries line/column; ValidationError
// names the offending field. Unknown keys and sections are rejected.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

// Canonical key-sorted rendering of every field; two configs are equal iff
// the serializations match byte for byte.
std::string serialize_config(const ExperimentConfig& c);

// FNV-1a over the canonical serialization.
std::string config_hash(const ExperimentConfig& c);

} // namespace xf
