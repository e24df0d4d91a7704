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

#include "modesched/rollout.hpp"

#include <cmath>
#include <limits>

namespace modesched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_horizon(const SystemModel& system, const Schedule& schedule) {
  if (schedule.horizon() != system.horizon()) {
    throw std::invalid_argument("rollout: schedule length does not match the system horizon");
  }
}

// Shared rollout loop; ModeAt maps a step index in [0, horizon) to a mode.
template <typename ModeAt>
double rollout_cost(const SystemModel& system, ModeAt&& mode_at, RolloutScratch& scratch) {
  const int horizon = system.horizon();
  const double dt = system.dt();
  scratch.x = system.initial_state();
  double total = 0.0;
  for (int k = 0; k < horizon; ++k) {
    if (!scratch.x.allFinite()) return kInf;
    const ModeId mode = mode_at(k);
    const double c = system.stage_cost(scratch.x, mode) * dt;
    if (!std::isfinite(c)) return kInf;
    total += c;
    system.step_into(scratch.x, k, mode, scratch.next);
    scratch.x.swap(scratch.next);
  }
  if (!scratch.x.allFinite()) return kInf;
  const double terminal_stage = system.stage_cost(scratch.x, mode_at(horizon - 1)) * dt;
  const double terminal = system.terminal_cost(scratch.x);
  if (!std::isfinite(terminal_stage) || !std::isfinite(terminal)) return kInf;
  return total + terminal_stage + terminal;
}

}  // namespace

TrajectoryRecord evaluate(const SystemModel& system, const Schedule& schedule) {
  check_horizon(system, schedule);
  const int horizon = system.horizon();
  const double dt = system.dt();
  TrajectoryRecord record;
  record.states.reserve(static_cast<std::size_t>(horizon) + 1);
  record.stage_costs.reserve(static_cast<std::size_t>(horizon) + 1);
  Eigen::VectorXd x = system.initial_state();
  Eigen::VectorXd next(system.state_dim());
  double total = 0.0;
  for (int k = 0; k <= horizon; ++k) {
    if (!x.allFinite()) {
      record.diverged = true;
      break;
    }
    const ModeId mode = schedule[std::min(k, horizon - 1)];
    const double c = system.stage_cost(x, mode) * dt;
    if (!std::isfinite(c)) {
      record.diverged = true;
      break;
    }
    record.states.push_back(x);
    record.stage_costs.push_back(c);
    total += c;
    if (k < horizon) {
      system.step_into(x, k, mode, next);
      x.swap(next);
    }
  }
  if (!record.diverged) {
    const double terminal = system.terminal_cost(record.states.back());
    if (std::isfinite(terminal)) {
      total += terminal;
    } else {
      record.diverged = true;
    }
  }
  record.total_cost = record.diverged ? kInf : total;
  return record;
}

double evaluate_cost(const SystemModel& system, const Schedule& schedule) {
  RolloutScratch scratch;
  return evaluate_cost(system, schedule, scratch);
}

double evaluate_cost(const SystemModel& system, const Schedule& schedule,
                     RolloutScratch& scratch) {
  check_horizon(system, schedule);
  return rollout_cost(system, [&schedule](int k) { return schedule[k]; }, scratch);
}

double evaluate_switch_cost(const SystemModel& system, const Schedule& base,
                            const SwitchTuple& sw, RolloutScratch& scratch) {
  check_horizon(system, base);
  if (sw.start < 0 || sw.start >= base.horizon() || sw.duration < 0 ||
      sw.start + sw.duration > base.horizon()) {
    throw std::invalid_argument("evaluate_switch_cost: switch does not fit the horizon");
  }
  const int window_end = sw.start + sw.duration;
  return rollout_cost(
      system,
      [&base, &sw, window_end](int k) {
        return (k >= sw.start && k < window_end) ? sw.mode : base[k];
      },
      scratch);
}

double evaluate_controls(const ContinuousSystem& system,
                         const std::vector<Eigen::VectorXd>& controls) {
  if (static_cast<int>(controls.size()) != system.horizon()) {
    throw std::invalid_argument("evaluate_controls: control count does not match the horizon");
  }
  Eigen::VectorXd x = system.initial_state();
  Eigen::VectorXd next(system.state_dim());
  double total = 0.0;
  for (int k = 0; k < system.horizon(); ++k) {
    if (!x.allFinite()) return kInf;
    const double c = system.stage_cost(x, controls[static_cast<std::size_t>(k)]);
    if (!std::isfinite(c)) return kInf;
    total += c;
    system.step_into(x, k, controls[static_cast<std::size_t>(k)], next);
    x.swap(next);
  }
  if (!x.allFinite()) return kInf;
  const double terminal = system.terminal_cost(x);
  if (!std::isfinite(terminal)) return kInf;
  return total + terminal;
}

}  // namespace modesched
