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

// Point mass on a line, state [p, v], explicit Euler:
//   p' = p + v dt,  v' = v + a dt.
// Modes hold mode_count acceleration levels uniformly spaced on
// [a_min, a_max]. Stage cost p^2 + v^2 + a^2; no terminal cost.
struct DoubleIntegratorParams {
  int horizon = 50;
  double dt = 0.1;
  int mode_count = 3;
  double a_min = -1.0;
  double a_max = 1.0;
  Eigen::Vector2d initial_state{0.0, 0.0};
};

class DoubleIntegratorModel final : public SystemModel {
 public:
  explicit DoubleIntegratorModel(const DoubleIntegratorParams& params);

  int state_dim() const override { return 2; }
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

  double acceleration_level(ModeId mode) const {
    return levels_[static_cast<std::size_t>(mode)];
  }

 private:
  DoubleIntegratorParams params_;
  Eigen::VectorXd initial_state_;
  std::vector<double> levels_;
  ModeId neutral_mode_ = 0;
};

std::unique_ptr<DoubleIntegratorModel> build_double_integrator(
    const DoubleIntegratorParams& params = {});

}  // namespace modesched
