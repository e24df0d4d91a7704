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

#include "modesched/table_system.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace modesched {

TableSystem::TableSystem(std::vector<std::vector<int>> transitions, std::vector<double> costs,
                         int horizon, int initial_state_id, double dt)
    : transitions_(std::move(transitions)),
      costs_(std::move(costs)),
      horizon_(horizon),
      initial_state_id_(initial_state_id),
      dt_(dt) {
  if (transitions_.empty() || transitions_.size() != costs_.size()) {
    throw std::invalid_argument("TableSystem: transitions and costs must cover the same states");
  }
  const std::size_t modes = transitions_[0].size();
  if (modes == 0) throw std::invalid_argument("TableSystem: at least one mode required");
  const int states = static_cast<int>(costs_.size());
  for (const auto& row : transitions_) {
    if (row.size() != modes) throw std::invalid_argument("TableSystem: ragged transition table");
    for (int next : row) {
      if (next < 0 || next >= states) {
        throw std::invalid_argument("TableSystem: transition leaves the state set");
      }
    }
  }
  for (double c : costs_) {
    if (!std::isfinite(c)) throw std::invalid_argument("TableSystem: costs must be finite");
  }
  if (horizon_ < 1) throw std::invalid_argument("TableSystem: horizon must be >= 1");
  if (dt_ <= 0.0) throw std::invalid_argument("TableSystem: dt must be positive");
  if (initial_state_id_ < 0 || initial_state_id_ >= states) {
    throw std::invalid_argument("TableSystem: initial state id outside the state set");
  }
  initial_state_ = Eigen::VectorXd::Constant(1, static_cast<double>(initial_state_id_));
}

std::unique_ptr<TableSystem> TableSystem::load(const std::string& path, int horizon,
                                               int initial_state_id, double dt) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("TableSystem::load: cannot open '" + path + "'");
  std::vector<std::vector<int>> transitions;
  std::vector<double> costs;
  std::string line;
  std::size_t modes = 0;
  while (std::getline(in, line)) {
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    std::vector<double> values;
    double v;
    while (row >> v) values.push_back(v);
    if (values.size() < 2) {
      throw std::invalid_argument("TableSystem::load: each line needs next ids and a cost");
    }
    if (modes == 0) modes = values.size() - 1;
    if (values.size() - 1 != modes) {
      throw std::invalid_argument("TableSystem::load: inconsistent mode count across lines");
    }
    std::vector<int> next(modes);
    for (std::size_t m = 0; m < modes; ++m) next[m] = static_cast<int>(values[m]);
    transitions.push_back(std::move(next));
    costs.push_back(values.back());
  }
  return std::make_unique<TableSystem>(std::move(transitions), std::move(costs), horizon,
                                       initial_state_id, dt);
}

int TableSystem::state_id_of(const Eigen::VectorXd& x) const {
  if (!x.allFinite()) throw NonFiniteStateError("TableSystem: non-finite state");
  const int id = static_cast<int>(std::llround(x[0]));
  if (id < 0 || id >= state_count()) {
    throw std::invalid_argument("TableSystem: state id outside the state set");
  }
  return id;
}

void TableSystem::step_into(const Eigen::VectorXd& x, int /*k*/, ModeId mode,
                            Eigen::VectorXd& next) const {
  const int id = state_id_of(x);
  next.resize(1);
  next[0] = static_cast<double>(transitions_[static_cast<std::size_t>(id)][static_cast<std::size_t>(mode)]);
}

double TableSystem::stage_cost(const Eigen::VectorXd& x, ModeId /*mode*/) const {
  return costs_[static_cast<std::size_t>(state_id_of(x))];
}

double TableSystem::terminal_cost(const Eigen::VectorXd& x) const {
  state_id_of(x);
  return 0.0;
}

std::unique_ptr<SystemModel> TableSystem::reconfigured(
    int horizon, const Eigen::VectorXd& initial_state) const {
  const int id = state_id_of(initial_state);
  return std::make_unique<TableSystem>(transitions_, costs_, horizon, id, dt_);
}

}  // namespace modesched
