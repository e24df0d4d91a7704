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

#include <functional>
#include <vector>

#include "modesched/solver.hpp"
#include "modesched/system.hpp"

namespace modesched {

struct MpcConfig {
  int planning_horizon = 20;
  // Mode appended by the warm-start shift and executed on fallback;
  // -1 selects the system's neutral mode.
  ModeId default_mode = -1;
  InnerSolver inner = InnerSolver::kSampled;
  SolverConfig solver;                      // per-step solver settings
  std::int64_t max_rollouts_per_step = 2000;
};

struct PlanOutcome {
  Schedule schedule;
  double cost = 0.0;
  std::int64_t evaluations = 0;
};

struct MpcStepInfo {
  ModeId executed = 0;
  double planned_cost = 0.0;
  std::int64_t evaluations = 0;
  bool fallback = false;
};

// Receding-horizon loop around a schedule planner. Each step re-solves the
// planning-horizon problem from the observed state starting at the warm
// schedule, executes the first planned mode, then shifts the plan left and
// pads it with the default mode. A non-finite observation or plan cost
// falls back to the default mode and flags the step.
class RecedingHorizonController {
 public:
  // Planner signature: (system re-rooted at the observed state, warm-start
  // schedule, per-step seed) -> plan.
  using Planner = std::function<PlanOutcome(const SystemModel&, const Schedule&, std::uint64_t)>;

  // Plans with the iterative single-switch solver per `config`.
  RecedingHorizonController(const SystemModel& system, MpcConfig config);
  // Plans with a caller-supplied method (used for baseline sweeps).
  RecedingHorizonController(const SystemModel& system, MpcConfig config, Planner planner);

  MpcStepInfo step(const Eigen::VectorXd& observed_state, int step_index);

  const Schedule& warm_start() const { return warm_; }
  ModeId default_mode() const { return default_mode_; }

 private:
  const SystemModel* system_;
  MpcConfig config_;
  Planner planner_;
  Schedule warm_;
  ModeId default_mode_;
};

struct MpcEpisodeReport {
  std::vector<ModeId> executed_modes;
  std::vector<Eigen::VectorXd> states;  // episode_length + 1 entries
  std::vector<double> stage_costs;      // executed-trajectory stage costs
  double cumulative_cost = 0.0;         // executed schedule scored over the episode
  std::int64_t evaluations = 0;
  int fallback_steps = 0;
};

// Runs the closed loop for `episode_length` steps of the true system and
// scores the executed mode sequence over the whole episode.
MpcEpisodeReport run_mpc_episode(const SystemModel& system, const MpcConfig& config,
                                 int episode_length);
MpcEpisodeReport run_mpc_episode(const SystemModel& system, const MpcConfig& config,
                                 int episode_length, RecedingHorizonController::Planner planner);

}  // namespace modesched
