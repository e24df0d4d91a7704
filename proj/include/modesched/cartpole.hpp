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

#include <memory>
#include <vector>

#include "modesched/system.hpp"

namespace modesched {

// Cartpole swing-up benchmark. State layout: [theta, p, theta_dot, p_dot]
// with theta = 0 the upright pole and theta unwrapped. The control is a
// horizontal force on the cart; the hybrid mode set holds mode_count force
// levels uniformly spaced on [u_min, u_max].
struct CartpoleParams {
  int horizon = 100;
  double dt = 0.05;
  int mode_count = 5;
  double u_min = -10.0;
  double u_max = 10.0;
  double cart_mass = 1.0;
  double pole_mass = 0.1;
  double pole_half_length = 0.5;
  double gravity = 9.81;
  int rk4_substeps = 1;
  // Pole horizontal, cart centered at rest.
  Eigen::Vector4d initial_state{1.5707963267948966, 0.0, 0.0, 0.0};
};

class CartpoleModel final : public SystemModel {
 public:
  explicit CartpoleModel(const CartpoleParams& params);

  int state_dim() const override { return 4; }
  int mode_count() const override { return params_.mode_count; }
  int horizon() const override { return params_.horizon; }
  double dt() const override { return params_.dt; }
  const Eigen::VectorXd& initial_state() const override { return initial_state_; }

  void step_into(const Eigen::VectorXd& x, int k, ModeId mode,
                 Eigen::VectorXd& next) const override;
  double stage_cost(const Eigen::VectorXd& x, ModeId mode) const override;
  double terminal_cost(const Eigen::VectorXd& x) const override;
  ModeId neutral_mode() const override { return neutral_mode_; }
  std::unique_ptr<SystemModel> reconfigured(
      int horizon, const Eigen::VectorXd& initial_state) const override;

  const CartpoleParams& params() const { return params_; }
  double force_level(ModeId mode) const { return force_levels_[static_cast<std::size_t>(mode)]; }
  const std::vector<double>& force_levels() const { return force_levels_; }

 private:
  CartpoleParams params_;
  Eigen::VectorXd initial_state_;
  std::vector<double> force_levels_;
  ModeId neutral_mode_ = 0;
};

// Continuous-force relaxation of the same plant. Stage cost is the swing-up
// cost scaled by dt; the terminal cost adds the state part of the stage cost
// at the final index so totals are comparable with schedule rollouts.
class CartpoleContinuous final : public ContinuousSystem {
 public:
  explicit CartpoleContinuous(const CartpoleParams& params);

  int state_dim() const override { return 4; }
  int control_dim() const override { return 1; }
  int horizon() const override { return params_.horizon; }
  const Eigen::VectorXd& initial_state() const override { return initial_state_; }
  const Eigen::VectorXd& control_lower() const override { return lower_; }
  const Eigen::VectorXd& control_upper() const override { return upper_; }

  void step_into(const Eigen::VectorXd& x, int k, const Eigen::VectorXd& u,
                 Eigen::VectorXd& next) const override;
  double stage_cost(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override;
  double terminal_cost(const Eigen::VectorXd& x) const override;

  const CartpoleParams& params() const { return params_; }

 private:
  CartpoleParams params_;
  Eigen::VectorXd initial_state_;
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
};

// Swing-up stage cost 4(cos(theta) - 1)^2 + 0.1 p^2 + 0.1 (theta_dot^2 +
// p_dot^2) + u^2, exposed for tests and cost plumbing.
double cartpole_stage_cost_raw(const Eigen::VectorXd& x, double u);

// Terminal cost 4(cos(theta) - 1)^2.
double cartpole_terminal_cost_raw(const Eigen::VectorXd& x);

// Validates parameter ranges and builds the hybrid model.
std::unique_ptr<CartpoleModel> build_cartpole(const CartpoleParams& params = {});

}  // namespace modesched
