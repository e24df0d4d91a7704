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

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modesched/baselines.hpp"
#include "modesched/ilqr.hpp"
#include "modesched/solver.hpp"
#include "modesched/system.hpp"

namespace modesched {

// Raised for any configuration problem: missing file, syntax error, unknown
// field, out-of-range value. The message names the offending field path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class ExperimentKind { kSolve, kCompare, kSweepHorizon, kMpc };

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

struct SystemConfig {
  std::string type = "cartpole";  // cartpole | double_integrator | table
  int horizon = 100;
  double dt = 0.05;
  int mode_count = 5;
  double u_min = -10.0;
  double u_max = 10.0;
  std::vector<double> initial_state;  // empty selects the type's default
  // cartpole physical parameters
  double cart_mass = 1.0;
  double pole_mass = 0.1;
  double pole_half_length = 0.5;
  double gravity = 9.81;
  int rk4_substeps = 1;
  std::string table_file;  // table systems only; relative to the config file
};

struct SolverBlock {
  SolverConfig solver;
  InnerSolver inner = InnerSolver::kSampled;
  ModeId initial_mode = -1;  // -1 selects the system's neutral mode
};

struct MpcBlock {
  int planning_horizon = 20;
  int episode_length = 100;
  std::int64_t max_rollouts_per_step = 2000;
  std::vector<int> horizons{10, 20, 40, 80};  // sweep-horizon grid
};

struct OracleBlock {
  bool enabled = true;
  IlqrConfig ilqr;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kSolve;
  std::uint64_t seed = 0;
  int repetitions = 1;
  std::int64_t budget = 25000;  // rollouts per method in compare runs
  std::string output_dir = "out";
  SystemConfig system;
  SolverBlock solver;
  std::vector<BaselineConfig> baselines;
  MpcBlock mpc;
  OracleBlock oracle;
  std::vector<int> compare_horizons;  // empty means {system.horizon}
};

// Strict parse: unknown fields are errors, as are out-of-range values.
// `kind_override`, when set, must match a config that declares a kind and
// fills it in for configs that do not.
ExperimentConfig parse_config(const std::string& path,
                              std::optional<ExperimentKind> kind_override = {});
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin,
                                   std::optional<ExperimentKind> kind_override = {});

// Canonical serialized form (sorted keys); input to the run-id hash.
std::string canonical_json(const ExperimentConfig& config);

// FNV-1a over the canonical form, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

std::unique_ptr<SystemModel> build_system(const SystemConfig& config);

// Continuous relaxation for cartpole; throws ConfigError for system types
// without one.
std::unique_ptr<ContinuousSystem> build_continuous_system(const SystemConfig& config);

}  // namespace modesched
