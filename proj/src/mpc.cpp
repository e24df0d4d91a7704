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

#include "modesched/mpc.hpp"

#include <cmath>
#include <limits>

#include "modesched/rng.hpp"

namespace modesched {

namespace {

MpcConfig validate(const SystemModel& system, MpcConfig config) {
  if (config.planning_horizon < 1) {
    throw std::invalid_argument("mpc: planning_horizon must be >= 1");
  }
  if (config.default_mode >= system.mode_count()) {
    throw std::invalid_argument("mpc: default_mode outside the mode set");
  }
  return config;
}

RecedingHorizonController::Planner make_iterative_planner(const MpcConfig& config) {
  const SolverConfig base_solver = config.solver;
  const InnerSolver inner = config.inner;
  const std::int64_t per_step_budget = config.max_rollouts_per_step;
  return [base_solver, inner, per_step_budget](const SystemModel& planning_system,
                                               const Schedule& warm, std::uint64_t seed) {
    SolverConfig solver = base_solver;
    solver.seed = seed;
    solver.max_evaluations = per_step_budget;
    const SolveReport report = solve_iterative(planning_system, warm, solver, inner);
    return PlanOutcome{report.final_schedule, report.cost_history.back(), report.evaluations};
  };
}

MpcEpisodeReport run_episode(const SystemModel& system, RecedingHorizonController& controller,
                             int episode_length) {
  if (episode_length < 1) throw std::invalid_argument("mpc: episode_length must be >= 1");
  MpcEpisodeReport report;
  Eigen::VectorXd x = system.initial_state();
  Eigen::VectorXd next(system.state_dim());
  report.states.push_back(x);
  for (int k = 0; k < episode_length; ++k) {
    const MpcStepInfo info = controller.step(x, k);
    report.executed_modes.push_back(info.executed);
    report.evaluations += info.evaluations;
    if (info.fallback) ++report.fallback_steps;
    // Shipped systems are time-invariant, so the step index can be clamped
    // when the episode outruns the system's nominal horizon.
    system.step_into(x, std::min(k, system.horizon() - 1), info.executed, next);
    x.swap(next);
    report.states.push_back(x);
  }

  // Score the executed mode sequence over the whole episode.
  const auto episode_system = system.reconfigured(episode_length, system.initial_state());
  const TrajectoryRecord record = evaluate(*episode_system, Schedule(report.executed_modes));
  report.stage_costs = record.stage_costs;
  report.cumulative_cost = record.total_cost;
  return report;
}

}  // namespace

RecedingHorizonController::RecedingHorizonController(const SystemModel& system, MpcConfig config)
    : RecedingHorizonController(system, config, make_iterative_planner(config)) {}

RecedingHorizonController::RecedingHorizonController(const SystemModel& system, MpcConfig config,
                                                     Planner planner)
    : system_(&system),
      config_(validate(system, std::move(config))),
      planner_(std::move(planner)),
      default_mode_(config_.default_mode >= 0 ? config_.default_mode : system.neutral_mode()) {
  warm_ = Schedule::uniform(config_.planning_horizon, default_mode_);
}

MpcStepInfo RecedingHorizonController::step(const Eigen::VectorXd& observed_state,
                                            int step_index) {
  MpcStepInfo info;
  if (!observed_state.allFinite()) {
    info.executed = default_mode_;
    info.fallback = true;
    info.planned_cost = std::numeric_limits<double>::infinity();
    warm_ = warm_.shifted(default_mode_);
    return info;
  }
  const auto planning_system = system_->reconfigured(config_.planning_horizon, observed_state);
  const std::uint64_t step_seed =
      derive_seed(config_.solver.seed, static_cast<std::uint64_t>(step_index));
  const PlanOutcome plan = planner_(*planning_system, warm_, step_seed);
  info.evaluations = plan.evaluations;
  if (!std::isfinite(plan.cost) || plan.schedule.horizon() != config_.planning_horizon) {
    info.executed = default_mode_;
    info.fallback = true;
    info.planned_cost = std::numeric_limits<double>::infinity();
    warm_ = warm_.shifted(default_mode_);
    return info;
  }
  info.executed = plan.schedule[0];
  info.planned_cost = plan.cost;
  warm_ = plan.schedule.shifted(default_mode_);
  return info;
}

MpcEpisodeReport run_mpc_episode(const SystemModel& system, const MpcConfig& config,
                                 int episode_length) {
  RecedingHorizonController controller(system, config);
  return run_episode(system, controller, episode_length);
}

MpcEpisodeReport run_mpc_episode(const SystemModel& system, const MpcConfig& config,
                                 int episode_length,
                                 RecedingHorizonController::Planner planner) {
  RecedingHorizonController controller(system, config, std::move(planner));
  return run_episode(system, controller, episode_length);
}

}  // namespace modesched
