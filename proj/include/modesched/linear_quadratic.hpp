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

#include "modesched/system.hpp"

namespace modesched {

// Discrete linear dynamics x' = A x + B u with quadratic costs
// x'Qx + u'Ru per stage and x'Qf x at the end. Unbounded controls by
// default. The closed-form optimum makes this the reference problem for
// checking the trajectory optimizer.
class LinearQuadraticSystem final : public ContinuousSystem {
 public:
  LinearQuadraticSystem(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd q,
                        Eigen::MatrixXd r, Eigen::MatrixXd qf, Eigen::VectorXd x0,
                        int horizon);

  int state_dim() const override { return static_cast<int>(a_.rows()); }
  int control_dim() const override { return static_cast<int>(b_.cols()); }
  int horizon() const override { return horizon_; }
  const Eigen::VectorXd& initial_state() const override { return x0_; }
  const Eigen::VectorXd& control_lower() const override { return lower_; }
  const Eigen::VectorXd& control_upper() const override { return upper_; }

  void step_into(const Eigen::VectorXd& x, int k, const Eigen::VectorXd& u,
                 Eigen::VectorXd& next) const override;
  double stage_cost(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override;
  double terminal_cost(const Eigen::VectorXd& x) const override;

  const Eigen::MatrixXd& a() const { return a_; }
  const Eigen::MatrixXd& b() const { return b_; }
  const Eigen::MatrixXd& q() const { return q_; }
  const Eigen::MatrixXd& r() const { return r_; }
  const Eigen::MatrixXd& qf() const { return qf_; }

 private:
  Eigen::MatrixXd a_, b_, q_, r_, qf_;
  Eigen::VectorXd x0_;
  int horizon_;
  Eigen::VectorXd lower_, upper_;
};

// Double-integrator instance (Euler discretization at `dt`) with weights
// q_pos/q_vel on the diagonal of Q, scalar control weight r and Qf = Q.
std::unique_ptr<LinearQuadraticSystem> make_double_integrator_lq(
    double dt, int horizon, double q_pos, double q_vel, double r,
    const Eigen::Vector2d& x0);

}  // namespace modesched
