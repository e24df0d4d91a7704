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

#include "modesched/linear_quadratic.hpp"

namespace modesched {

LinearQuadraticSystem::LinearQuadraticSystem(Eigen::MatrixXd a, Eigen::MatrixXd b,
                                             Eigen::MatrixXd q, Eigen::MatrixXd r,
                                             Eigen::MatrixXd qf, Eigen::VectorXd x0,
                                             int horizon)
    : a_(std::move(a)),
      b_(std::move(b)),
      q_(std::move(q)),
      r_(std::move(r)),
      qf_(std::move(qf)),
      x0_(std::move(x0)),
      horizon_(horizon) {
  const auto n = a_.rows();
  const auto m = b_.cols();
  if (a_.cols() != n || b_.rows() != n || q_.rows() != n || q_.cols() != n ||
      r_.rows() != m || r_.cols() != m || qf_.rows() != n || qf_.cols() != n ||
      x0_.size() != n) {
    throw std::invalid_argument("LinearQuadraticSystem: inconsistent dimensions");
  }
  if (horizon_ < 1) throw std::invalid_argument("LinearQuadraticSystem: horizon must be >= 1");
  lower_ = Eigen::VectorXd::Constant(m, -1e30);
  upper_ = Eigen::VectorXd::Constant(m, 1e30);
}

void LinearQuadraticSystem::step_into(const Eigen::VectorXd& x, int /*k*/,
                                      const Eigen::VectorXd& u, Eigen::VectorXd& next) const {
  next.noalias() = a_ * x;
  next.noalias() += b_ * u;
}

double LinearQuadraticSystem::stage_cost(const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& u) const {
  return x.dot(q_ * x) + u.dot(r_ * u);
}

double LinearQuadraticSystem::terminal_cost(const Eigen::VectorXd& x) const {
  return x.dot(qf_ * x);
}

std::unique_ptr<LinearQuadraticSystem> make_double_integrator_lq(
    double dt, int horizon, double q_pos, double q_vel, double r,
    const Eigen::Vector2d& x0) {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, dt, 0.0, 1.0;
  Eigen::MatrixXd b(2, 1);
  b << 0.0, dt;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2, 2);
  q(0, 0) = q_pos;
  q(1, 1) = q_vel;
  Eigen::MatrixXd rm = Eigen::MatrixXd::Constant(1, 1, r);
  return std::make_unique<LinearQuadraticSystem>(a, b, q, rm, q, x0, horizon);
}

}  // namespace modesched
