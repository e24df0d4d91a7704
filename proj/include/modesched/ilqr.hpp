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

#include <vector>

#include "modesched/system.hpp"

namespace modesched {

// Iterative linear-quadratic trajectory optimizer over a ContinuousSystem.
// Dynamics Jacobians and cost expansions come from central finite
// differences of the black-box step and cost maps, so no analytic
// derivatives are required. Serves as the locally optimal reference for
// optimality-gap measurements.
struct IlqrConfig {
  int max_iterations = 200;
  double tolerance = 1e-8;          // stop once an accepted improvement falls below this
  double acceptance_floor = 1e-12;  // minimum strict decrease to accept a forward pass
  double fd_step_rel = 1e-5;        // dynamics Jacobian step, relative with floor
  double fd_step_floor = 1e-8;
  double fd_hessian_rel = 1e-3;     // cost-curvature step, relative with floor
  double fd_hessian_floor = 1e-4;
  double reg_init = 1e-6;           // Levenberg shift on the control Hessian
  double reg_min = 1e-6;
  double reg_max = 1e6;
  double reg_scale = 10.0;
  int line_search_steps = 11;       // alpha = 1, 1/2, ..., 2^-(steps-1)
  bool clamp_controls = true;
  // The swing-up objective is multimodal, so the oracle entry point runs a
  // fixed family of primer initializations (zeros plus paired sinusoids of
  // a few periods and amplitudes) and keeps the best local optimum. 1 runs
  // from zeros only; values above the primer family size are clamped.
  int restarts = 9;
};

struct IlqrResult {
  std::vector<Eigen::VectorXd> controls;  // horizon entries
  std::vector<Eigen::VectorXd> states;    // horizon + 1 entries
  double cost = 0.0;
  std::vector<double> cost_history;  // initial cost, then one entry per accepted iteration
  int iterations_accepted = 0;
  bool converged = false;
  bool warning_non_pd = false;  // backward pass failed at maximum regularization
};

IlqrResult ilqr_oracle(const ContinuousSystem& system, const IlqrConfig& config = {});
IlqrResult ilqr_oracle(const ContinuousSystem& system,
                       std::vector<Eigen::VectorXd> initial_controls,
                       const IlqrConfig& config = {});

// Central-difference Jacobians of the step map at (x, u, k); step sizes are
// rel * |value| floored at `floor`. Exposed for self-consistency tests.
void finite_diff_step_jacobians(const ContinuousSystem& system, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& u, int k, double rel, double floor,
                                Eigen::MatrixXd& a, Eigen::MatrixXd& b);

}  // namespace modesched
