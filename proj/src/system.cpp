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

#include "modesched/system.hpp"

namespace modesched {

Eigen::VectorXd SystemModel::step(const Eigen::VectorXd& x, int k, ModeId mode) const {
  if (mode < 0 || mode >= mode_count()) {
    throw std::invalid_argument("SystemModel::step: mode outside [0, mode_count)");
  }
  if (k < 0 || k >= horizon()) {
    throw std::invalid_argument("SystemModel::step: step index outside [0, horizon)");
  }
  if (x.size() != state_dim()) {
    throw std::invalid_argument("SystemModel::step: state dimension mismatch");
  }
  if (!x.allFinite()) {
    throw NonFiniteStateError("SystemModel::step: non-finite state");
  }
  Eigen::VectorXd next(state_dim());
  step_into(x, k, mode, next);
  return next;
}

Eigen::VectorXd ContinuousSystem::step(const Eigen::VectorXd& x, int k,
                                       const Eigen::VectorXd& u) const {
  if (k < 0 || k >= horizon()) {
    throw std::invalid_argument("ContinuousSystem::step: step index outside [0, horizon)");
  }
  if (x.size() != state_dim() || u.size() != control_dim()) {
    throw std::invalid_argument("ContinuousSystem::step: dimension mismatch");
  }
  if (!x.allFinite()) {
    throw NonFiniteStateError("ContinuousSystem::step: non-finite state");
  }
  Eigen::VectorXd next(state_dim());
  step_into(x, k, u, next);
  return next;
}

}  // namespace modesched
