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

#include <vector>

#include "modesched/system.hpp"

namespace modesched {

// Reusable state buffers for the allocation-free cost paths.
struct RolloutScratch {
  Eigen::VectorXd x;
  Eigen::VectorXd next;
};

// Rolls the schedule out from the system's initial state, accumulating
// stage_cost(x_k, mode_k) * dt for k in [0, horizon] (the terminal index
// reuses the last scheduled mode) plus the terminal cost. A non-finite
// state or cost truncates the record and sets total_cost to +infinity so
// diverging schedules rank last.
TrajectoryRecord evaluate(const SystemModel& system, const Schedule& schedule);

// Total cost only; no state history.
double evaluate_cost(const SystemModel& system, const Schedule& schedule);
double evaluate_cost(const SystemModel& system, const Schedule& schedule,
                     RolloutScratch& scratch);

// Cost of stitch(base, sw) without materializing the stitched schedule.
// Bit-identical to evaluate_cost on the stitched schedule.
double evaluate_switch_cost(const SystemModel& system, const Schedule& base,
                            const SwitchTuple& sw, RolloutScratch& scratch);

// Continuous objective: sum of stage_cost(x_k, u_k) for k in [0, horizon)
// plus terminal_cost(x_T). Divergence yields +infinity.
double evaluate_controls(const ContinuousSystem& system,
                         const std::vector<Eigen::VectorXd>& controls);

}  // namespace modesched
