// rigidpen: run penalized rigid-body sedimentation scenarios.
//
//   rigidpen run <config>      single run at numerics.eta
//   rigidpen sweep <config>    one run per sweep.etas entry, plus sweep.csv
//   rigidpen profile <config>  cross-section profiles (sweep when etas are set)
//
// Exit codes: 0 success, 2 configuration error, 3 solver failure.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rigidpen/errors.hpp"
#include "rigidpen/scenario.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kSolverFailure = 3;

void report(const rigidpen::ScenarioArtifacts& artifacts) {
  for (const auto& run : artifacts.runs) {
    std::cerr << "eta=" << rigidpen::format_double(run.eta) << " steps=" << run.steps.size();
    if (run.failed) std::cerr << " FAILED: " << run.error;
    std::cerr << "\n";
  }
  if (artifacts.sweep) {
    for (const auto& e : artifacts.sweep->entries) {
      std::cout << rigidpen::format_double(e.eta) << "  "
                << (e.failed ? std::string("failed") : rigidpen::format_double(e.d_norm));
      if (e.alpha) std::cout << "  alpha=" << rigidpen::format_double(*e.alpha);
      std::cout << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Velocity-penalization solver for a rigid body falling in a viscous fluid"};
  app.require_subcommand(1);
  int threads = 1;
  std::string out_dir;
  app.add_option("--threads", threads, "Sweep entries integrated concurrently")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory (overrides output.csv_dir)");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Integrate the scenario at numerics.eta");
  auto* sweep = app.add_subcommand("sweep", "Integrate every eta in sweep.etas and write sweep.csv");
  auto* profile = app.add_subcommand("profile", "Write cross-section velocity profiles");
  for (auto* sub : {run, sweep, profile}) {
    sub->add_option("config", config_path, "Scenario file")->required();
    sub->add_option("--threads", threads, "Sweep entries integrated concurrently")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", out_dir, "Output directory (overrides output.csv_dir)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  rigidpen::ScenarioConfig config;
  try {
    config = rigidpen::load_config(config_path);
  } catch (const rigidpen::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return kConfigError;
  }

  rigidpen::RunOptions options;
  options.out_dir = out_dir;
  options.threads = threads;
  if (sweep->parsed()) {
    options.mode = rigidpen::RunMode::Sweep;
  } else if (profile->parsed()) {
    if (config.output.profiles.empty()) {
      rigidpen::ProfileRequest through_center;
      through_center.time = config.t_final;
      config.output.profiles.push_back(through_center);
    }
    options.mode = config.sweep_etas.empty() ? rigidpen::RunMode::Single : rigidpen::RunMode::Sweep;
  }

  try {
    const rigidpen::ScenarioArtifacts artifacts = rigidpen::run_scenario(config, options);
    report(artifacts);
    return artifacts.any_failed() ? kSolverFailure : 0;
  } catch (const rigidpen::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const rigidpen::Error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverFailure;
  }
}
