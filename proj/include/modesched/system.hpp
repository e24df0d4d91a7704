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

#include <Eigen/Core>

#include <memory>
#include <stdexcept>
#include <vector>

#include "modesched/schedule.hpp"

namespace modesched {

// Raised when a state fed into a step or cost map is not finite. Rollouts
// guard against this themselves and rank diverging schedules last via an
// infinite total cost instead of throwing.
class NonFiniteStateError : public std::runtime_error {
 public:
  explicit NonFiniteStateError(const std::string& what) : std::runtime_error(what) {}
};

// Black-box hybrid system: M per-mode one-step transition maps over a fixed
// discrete horizon, plus stage and terminal costs. Implementations must be
// deterministic (identical (x, k, mode) give an identical next state) and
// are immutable after construction, so one instance can back any number of
// concurrent rollouts.
class SystemModel {
 public:
  virtual ~SystemModel() = default;

  virtual int state_dim() const = 0;
  virtual int mode_count() const = 0;
  virtual int horizon() const = 0;
  virtual double dt() const = 0;
  virtual const Eigen::VectorXd& initial_state() const = 0;

  // Writes the successor of `x` under `mode` at step `k` into `next`.
  // Hot path: inputs are assumed validated by the caller.
  virtual void step_into(const Eigen::VectorXd& x, int k, ModeId mode,
                         Eigen::VectorXd& next) const = 0;

  // Stage cost of being in `x` while `mode` is active. Systems whose cost
  // has no control term ignore the mode.
  virtual double stage_cost(const Eigen::VectorXd& x, ModeId mode) const = 0;

  virtual double terminal_cost(const Eigen::VectorXd& x) const = 0;

  // Mode used to pad default and warm-start schedules. Systems with force
  // levels return the level closest to zero.
  virtual ModeId neutral_mode() const { return 0; }

  // Copy of this system re-rooted at `initial_state` with a new horizon;
  // used by the receding-horizon loop.
  virtual std::unique_ptr<SystemModel> reconfigured(
      int horizon, const Eigen::VectorXd& initial_state) const = 0;

  // Checked convenience wrapper around step_into.
  Eigen::VectorXd step(const Eigen::VectorXd& x, int k, ModeId mode) const;
};

// Continuous-control counterpart used by the control-space baselines. Same
// conventions as SystemModel; the stage cost carries any time scaling.
class ContinuousSystem {
 public:
  virtual ~ContinuousSystem() = default;

  virtual int state_dim() const = 0;
  virtual int control_dim() const = 0;
  virtual int horizon() const = 0;
  virtual const Eigen::VectorXd& initial_state() const = 0;
  virtual const Eigen::VectorXd& control_lower() const = 0;
  virtual const Eigen::VectorXd& control_upper() const = 0;

  virtual void step_into(const Eigen::VectorXd& x, int k, const Eigen::VectorXd& u,
                         Eigen::VectorXd& next) const = 0;
  virtual double stage_cost(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const = 0;
  virtual double terminal_cost(const Eigen::VectorXd& x) const = 0;

  Eigen::VectorXd step(const Eigen::VectorXd& x, int k, const Eigen::VectorXd& u) const;
};

// One rolled-out schedule: states x_0..x_T, per-step stage costs (the
// terminal index included), and the total objective. A diverged rollout is
// truncated at the first non-finite state and carries an infinite total.
struct TrajectoryRecord {
  std::vector<Eigen::VectorXd> states;
  std::vector<double> stage_costs;
  double total_cost = 0.0;
  bool diverged = false;
};

}  // namespace modesched
