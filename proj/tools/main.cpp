#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Equivariant regulator trajectory-tracking experiments for a quadrotor"};
  app.set_version_flag("--version", eqr::cli::kToolVersion);
  app.require_subcommand(1);

  eqr::cli::RunOptions run;
  std::string config;
  auto* run_cmd = app.add_subcommand("run", "Run Monte Carlo campaigns and write CSV logs");
  run_cmd->add_option("--config", config, "JSON configuration file")->check(CLI::ExistingFile);
  run_cmd->add_option("--trajectory", run.trajectory, "hover | lissajous");
  run_cmd->add_option("--symmetry", run.symmetry, "dp | se23 | se3r3 | all");
  run_cmd->add_option("--trials", run.trials, "Monte Carlo trials per symmetry");
  run_cmd->add_option("--seed", run.seed, "Campaign seed");
  run_cmd->add_option("--experiment", run.experiment, "transient | asymptotic | custom");
  run_cmd->add_option("--out", run.out, "Output directory")->capture_default_str();
  run_cmd->add_flag("--summary-only", run.summary_only, "Skip the per-step trials.csv");

  auto* verify_cmd = app.add_subcommand("verify", "Run the embedded oracle checks");

  CLI11_PARSE(app, argc, argv);

  if (*run_cmd) {
    if (!config.empty()) run.config = config;
    return eqr::cli::cmd_run(run, std::cout, std::cerr);
  }
  if (*verify_cmd) return eqr::cli::cmd_verify(std::cout);
  return 1;
}
