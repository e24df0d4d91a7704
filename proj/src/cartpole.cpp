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

#include "modesched/cartpole.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

namespace modesched {

namespace {

using State4 = std::array<double, 4>;

// Pole-on-cart dynamics with theta measured from the upright vertical and
// l the pole half length. Standard benchmark equations of motion.
State4 derivative(const CartpoleParams& p, const State4& x, double u) {
  const double theta = x[0];
  const double theta_dot = x[2];
  const double p_dot = x[3];
  const double sin_th = std::sin(theta);
  const double cos_th = std::cos(theta);
  const double total_mass = p.cart_mass + p.pole_mass;
  const double polemass_length = p.pole_mass * p.pole_half_length;
  const double temp = (u + polemass_length * theta_dot * theta_dot * sin_th) / total_mass;
  const double theta_acc =
      (p.gravity * sin_th - cos_th * temp) /
      (p.pole_half_length * (4.0 / 3.0 - p.pole_mass * cos_th * cos_th / total_mass));
  const double p_acc = temp - polemass_length * theta_acc * cos_th / total_mass;
  return State4{theta_dot, p_dot, theta_acc, p_acc};
}

State4 rk4_step(const CartpoleParams& p, State4 x, double u) {
  const double h = p.dt / p.rk4_substeps;
  for (int s = 0; s < p.rk4_substeps; ++s) {
    const State4 k1 = derivative(p, x, u);
    State4 mid;
    for (int i = 0; i < 4; ++i) mid[i] = x[i] + 0.5 * h * k1[i];
    const State4 k2 = derivative(p, mid, u);
    for (int i = 0; i < 4; ++i) mid[i] = x[i] + 0.5 * h * k2[i];
    const State4 k3 = derivative(p, mid, u);
    for (int i = 0; i < 4; ++i) mid[i] = x[i] + h * k3[i];
    const State4 k4 = derivative(p, mid, u);
    for (int i = 0; i < 4; ++i) {
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }
  return x;
}

void validate(const CartpoleParams& p) {
  if (p.horizon < 1) throw std::invalid_argument("cartpole: horizon must be >= 1");
  if (p.dt <= 0.0) throw std::invalid_argument("cartpole: dt must be positive");
  if (p.mode_count < 2) throw std::invalid_argument("cartpole: mode_count must be >= 2");
  if (!(p.u_min < p.u_max)) throw std::invalid_argument("cartpole: u_min must be < u_max");
  if (p.cart_mass <= 0.0 || p.pole_mass <= 0.0 || p.pole_half_length <= 0.0) {
    throw std::invalid_argument("cartpole: masses and pole length must be positive");
  }
  if (p.rk4_substeps < 1) throw std::invalid_argument("cartpole: rk4_substeps must be >= 1");
}

std::vector<double> spaced_levels(int count, double lo, double hi) {
  std::vector<double> levels(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) {
    levels[static_cast<std::size_t>(m)] = lo + m * (hi - lo) / (count - 1);
  }
  return levels;
}

ModeId nearest_zero_level(const std::vector<double>& levels) {
  ModeId best = 0;
  for (std::size_t m = 1; m < levels.size(); ++m) {
    if (std::abs(levels[m]) < std::abs(levels[static_cast<std::size_t>(best)])) {
      best = static_cast<ModeId>(m);
    }
  }
  return best;
}

void require_finite(const Eigen::VectorXd& x, const char* where) {
  if (!x.allFinite()) throw NonFiniteStateError(std::string(where) + ": non-finite state");
}

}  // namespace

double cartpole_stage_cost_raw(const Eigen::VectorXd& x, double u) {
  const double c = std::cos(x[0]) - 1.0;
  return 4.0 * c * c + 0.1 * x[1] * x[1] + 0.1 * (x[2] * x[2] + x[3] * x[3]) + u * u;
}

double cartpole_terminal_cost_raw(const Eigen::VectorXd& x) {
  const double c = std::cos(x[0]) - 1.0;
  return 4.0 * c * c;
}

CartpoleModel::CartpoleModel(const CartpoleParams& params)
    : params_(params),
      initial_state_(params.initial_state),
      force_levels_(spaced_levels(params.mode_count, params.u_min, params.u_max)),
      neutral_mode_(nearest_zero_level(force_levels_)) {}

void CartpoleModel::step_into(const Eigen::VectorXd& x, int /*k*/, ModeId mode,
                              Eigen::VectorXd& next) const {
  const State4 in{x[0], x[1], x[2], x[3]};
  const State4 out = rk4_step(params_, in, force_levels_[static_cast<std::size_t>(mode)]);
  next.resize(4);
  for (int i = 0; i < 4; ++i) next[i] = out[static_cast<std::size_t>(i)];
}

double CartpoleModel::stage_cost(const Eigen::VectorXd& x, ModeId mode) const {
  require_finite(x, "CartpoleModel::stage_cost");
  return cartpole_stage_cost_raw(x, force_levels_[static_cast<std::size_t>(mode)]);
}

double CartpoleModel::terminal_cost(const Eigen::VectorXd& x) const {
  require_finite(x, "CartpoleModel::terminal_cost");
  return cartpole_terminal_cost_raw(x);
}

std::unique_ptr<SystemModel> CartpoleModel::reconfigured(
    int horizon, const Eigen::VectorXd& initial_state) const {
  CartpoleParams p = params_;
  p.horizon = horizon;
  if (initial_state.size() != 4) {
    throw std::invalid_argument("CartpoleModel::reconfigured: state must have 4 entries");
  }
  p.initial_state = initial_state;
  return build_cartpole(p);
}

CartpoleContinuous::CartpoleContinuous(const CartpoleParams& params)
    : params_(params), initial_state_(params.initial_state) {
  validate(params_);
  lower_ = Eigen::VectorXd::Constant(1, params_.u_min);
  upper_ = Eigen::VectorXd::Constant(1, params_.u_max);
}

void CartpoleContinuous::step_into(const Eigen::VectorXd& x, int /*k*/,
                                   const Eigen::VectorXd& u, Eigen::VectorXd& next) const {
  const State4 in{x[0], x[1], x[2], x[3]};
  const State4 out = rk4_step(params_, in, u[0]);
  next.resize(4);
  for (int i = 0; i < 4; ++i) next[i] = out[static_cast<std::size_t>(i)];
}

double CartpoleContinuous::stage_cost(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  require_finite(x, "CartpoleContinuous::stage_cost");
  return cartpole_stage_cost_raw(x, u[0]) * params_.dt;
}

double CartpoleContinuous::terminal_cost(const Eigen::VectorXd& x) const {
  require_finite(x, "CartpoleContinuous::terminal_cost");
  return cartpole_stage_cost_raw(x, 0.0) * params_.dt + cartpole_terminal_cost_raw(x);
}

std::unique_ptr<CartpoleModel> build_cartpole(const CartpoleParams& params) {
  validate(params);
  return std::make_unique<CartpoleModel>(params);
}

}  // namespace modesched
