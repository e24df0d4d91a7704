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
#include <string>
#include <vector>

#include "modesched/system.hpp"

namespace modesched {

// Finite-state system defined by explicit lookup tables: next state id =
// transitions[state][mode], stage cost = costs[state]. States are carried
// as 1-d vectors holding the id, and all arithmetic is exact, which makes
// table systems the fixture of choice for solver oracles.
class TableSystem final : public SystemModel {
 public:
  // transitions[state][mode] must index a valid state; costs has one entry
  // per state. Throws std::invalid_argument on malformed tables.
  TableSystem(std::vector<std::vector<int>> transitions, std::vector<double> costs,
              int horizon, int initial_state_id, double dt = 1.0);

  // Plain-text load: one line per state id, whitespace-separated next-state
  // ids (one per mode) followed by the stage cost. '#' lines and blank
  // lines are skipped.
  static std::unique_ptr<TableSystem> load(const std::string& path, int horizon,
                                           int initial_state_id, double dt = 1.0);

  int state_dim() const override { return 1; }
  int mode_count() const override { return static_cast<int>(transitions_[0].size()); }
  int horizon() const override { return horizon_; }
  double dt() const override { return dt_; }
  const Eigen::VectorXd& initial_state() const override { return initial_state_; }

  void step_into(const Eigen::VectorXd& x, int k, ModeId mode,
                 Eigen::VectorXd& next) const override;
  double stage_cost(const Eigen::VectorXd& x, ModeId mode) const override;
  double terminal_cost(const Eigen::VectorXd& x) const override;
  std::unique_ptr<SystemModel> reconfigured(
      int horizon, const Eigen::VectorXd& initial_state) const override;

  int state_count() const { return static_cast<int>(costs_.size()); }
  int initial_state_id() const { return initial_state_id_; }
  const std::vector<std::vector<int>>& transitions() const { return transitions_; }
  const std::vector<double>& costs() const { return costs_; }

 private:
  int state_id_of(const Eigen::VectorXd& x) const;

  std::vector<std::vector<int>> transitions_;
  std::vector<double> costs_;
  int horizon_;
  int initial_state_id_;
  double dt_;
  Eigen::VectorXd initial_state_;
};

}  // namespace modesched
