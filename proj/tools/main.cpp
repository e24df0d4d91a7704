// Copyright 2026 The modesched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "modesched/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;
constexpr int kExitNumericalFailure = 4;

struct CliArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> budget;
  int threads = 1;
};

void add_common_flags(CLI::App* cmd, CliArgs& args) {
  cmd->add_option("--config", args.config_path, "Experiment config file (JSON)")->required();
  cmd->add_option("--out", args.out_dir, "Output directory (overrides config output_dir)");
  cmd->add_option("--seed", args.seed, "Master seed (overrides config seed)");
  cmd->add_option("--budget", args.budget,
                  "Rollout budget per method for compare runs (overrides config budget)");
  cmd->add_option("--threads", args.threads, "Worker threads for rollout batches (default 1)")
      ->check(CLI::PositiveNumber);
}

int run(modesched::ExperimentKind kind, const CliArgs& args, bool validate_only) {
  using namespace modesched;
  ExperimentConfig config;
  try {
    config = parse_config(args.config_path,
                          validate_only ? std::optional<ExperimentKind>{} : kind);
    if (!args.out_dir.empty()) config.output_dir = args.out_dir;
    if (args.seed) config.seed = *args.seed;
    if (args.budget) {
      if (*args.budget < 1) throw ConfigError("budget: must be >= 1");
      config.budget = *args.budget;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  if (validate_only) {
    std::cout << "ok " << to_string(config.kind) << " " << config_hash(config) << "\n";
    return kExitOk;
  }

  try {
    RunOptions options;
    options.threads = args.threads;
    const RunResult result = run_experiment(config, options);
    std::cout << result.run_dir.string() << "\n";
    for (const Artifact& artifact : result.artifacts) {
      std::cout << "  " << artifact.name << " (" << artifact.rows << " rows)\n";
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NonFiniteStateError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIoError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "modesched: mode-schedule optimization for black-box hybrid systems.\n"
      "\n"
      "Experiments are described by a JSON config with blocks `system`, `solver`,\n"
      "`baselines`, `mpc` and `oracle`; unknown fields are rejected. Defaults:\n"
      "  system: type=cartpole horizon=100 dt=0.05 mode_count=5 u_min=-10 u_max=10\n"
      "          cart_mass=1.0 pole_mass=0.1 pole_half_length=0.5 gravity=9.81\n"
      "          rk4_substeps=1 initial_state=[pi/2,0,0,0]\n"
      "  solver: batch_size=64 max_iterations=1000 tolerance=1e-9\n"
      "          policy=first-improvement inner=sampled initial_mode=-1 (neutral)\n"
      "          max_evaluations=0 (unlimited)\n"
      "  baseline entries: samples=25 iterations=50 elite_fraction=0.1 smoothing=1e-3\n"
      "          temperature=0.1 noise_sigma=1.0 mutation_rate=0.25\n"
      "  mpc: planning_horizon=20 episode_length=100 max_rollouts_per_step=2000\n"
      "          horizons=[10,20,40,80]\n"
      "  oracle: enabled=true max_iterations=200 tolerance=1e-8 clamp_controls=true\n"
      "          restarts=9\n"
      "  top level: seed=0 repetitions=1 budget=25000 output_dir=out\n"
      "          compare_horizons=[] (system horizon)\n"
      "\n"
      "See configs/reference.json for a fully explicit example."};
  app.require_subcommand(1);

  CliArgs args;
  CLI::App* solve = app.add_subcommand("solve", "Optimize one mode schedule and dump it");
  CLI::App* compare =
      app.add_subcommand("compare", "Run every configured method at equal rollout budget");
  CLI::App* sweep = app.add_subcommand("sweep-horizon",
                                       "Closed-loop cost across planning horizons");
  CLI::App* mpc = app.add_subcommand("mpc", "Run the receding-horizon loop once");
  CLI::App* validate =
      app.add_subcommand("validate-config", "Parse and validate a config, print its hash");
  for (CLI::App* cmd : {solve, compare, sweep, mpc, validate}) add_common_flags(cmd, args);

  CLI11_PARSE(app, argc, argv);

  using modesched::ExperimentKind;
  if (solve->parsed()) return run(ExperimentKind::kSolve, args, false);
  if (compare->parsed()) return run(ExperimentKind::kCompare, args, false);
  if (sweep->parsed()) return run(ExperimentKind::kSweepHorizon, args, false);
  if (mpc->parsed()) return run(ExperimentKind::kMpc, args, false);
  return run(ExperimentKind::kSolve, args, true);
}
