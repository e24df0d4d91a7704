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

#include "modesched/double_integrator.hpp"

#include <cmath>

namespace modesched {

namespace {

void validate(const DoubleIntegratorParams& p) {
  if (p.horizon < 1) throw std::invalid_argument("double_integrator: horizon must be >= 1");
  if (p.dt <= 0.0) throw std::invalid_argument("double_integrator: dt must be positive");
  if (p.mode_count < 2) throw std::invalid_argument("double_integrator: mode_count must be >= 2");
  if (!(p.a_min < p.a_max)) throw std::invalid_argument("double_integrator: a_min must be < a_max");
}

}  // namespace

DoubleIntegratorModel::DoubleIntegratorModel(const DoubleIntegratorParams& params)
    : params_(params), initial_state_(params.initial_state) {
  levels_.resize(static_cast<std::size_t>(params_.mode_count));
  for (int m = 0; m < params_.mode_count; ++m) {
    levels_[static_cast<std::size_t>(m)] =
        params_.a_min + m * (params_.a_max - params_.a_min) / (params_.mode_count - 1);
  }
  for (std::size_t m = 1; m < levels_.size(); ++m) {
    if (std::abs(levels_[m]) < std::abs(levels_[static_cast<std::size_t>(neutral_mode_)])) {
      neutral_mode_ = static_cast<ModeId>(m);
    }
  }
}

void DoubleIntegratorModel::step_into(const Eigen::VectorXd& x, int /*k*/, ModeId mode,
                                      Eigen::VectorXd& next) const {
  const double a = levels_[static_cast<std::size_t>(mode)];
  next.resize(2);
  next[0] = x[0] + x[1] * params_.dt;
  next[1] = x[1] + a * params_.dt;
}

double DoubleIntegratorModel::stage_cost(const Eigen::VectorXd& x, ModeId mode) const {
  if (!x.allFinite()) throw NonFiniteStateError("DoubleIntegratorModel::stage_cost: non-finite state");
  const double a = levels_[static_cast<std::size_t>(mode)];
  return x[0] * x[0] + x[1] * x[1] + a * a;
}

double DoubleIntegratorModel::terminal_cost(const Eigen::VectorXd& x) const {
  if (!x.allFinite()) throw NonFiniteStateError("DoubleIntegratorModel::terminal_cost: non-finite state");
  return 0.0;
}

std::unique_ptr<SystemModel> DoubleIntegratorModel::reconfigured(
    int horizon, const Eigen::VectorXd& initial_state) const {
  DoubleIntegratorParams p = params_;
  p.horizon = horizon;
  if (initial_state.size() != 2) {
    throw std::invalid_argument("DoubleIntegratorModel::reconfigured: state must have 2 entries");
  }
  p.initial_state = initial_state;
  return build_double_integrator(p);
}

std::unique_ptr<DoubleIntegratorModel> build_double_integrator(
    const DoubleIntegratorParams& params) {
  validate(params);
  return std::make_unique<DoubleIntegratorModel>(params);
}

}  // namespace modesched
