#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "xf/config.hpp"
#include "xf/errors.hpp"
#include "xf/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "xfields: numerical experiments for the crossed-field magnetic "
      "Hamiltonian (D_x+y)^2 + D_y^2 + x + V"};
  std::string experiment, config_path, out_dir;
  int seed = -1;
  int threads = 0;
  app.add_option("experiment", experiment,
                 "one of: resolvent-scan, mourre-scan, weighted-mourre-scan, "
                 "certificate, detector, propagator-validate, "
                 "unboundedness-demo, diagnostics")
      ->required();
  app.add_option("--config", config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir,
                 "output directory (overrides the config's output_dir)");
  app.add_option("--seed", seed, "override the config's seed");
  app.add_option("--threads", threads, "Eigen thread count");
  CLI11_PARSE(app, argc, argv);

  try {
    const xf::ExperimentKind kind = xf::experiment_from_name(experiment);
    xf::ExperimentConfig cfg = xf::load_config(config_path);
    if (cfg.experiment != kind)
      throw xf::ValidationError(
          "experiment", "config declares '" +
                            xf::experiment_name(cfg.experiment) +
                            "' but the command line asked for '" + experiment +
                            "'");
    if (seed >= 0) cfg.seed = std::uint32_t(seed);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (threads > 0) Eigen::setNbThreads(threads);
    return xf::run_and_write(cfg);
  } catch (const xf::Error& e) {
    std::cerr << "xfields " << experiment << " [" << config_path
              << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "xfields " << experiment << " [" << config_path
              << "]: " << e.what() << "\n";
    return 1;
  }
}
