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

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

#include "modesched/cartpole.hpp"
#include "modesched/ilqr.hpp"
#include "modesched/linear_quadratic.hpp"
#include "modesched/rng.hpp"

using namespace modesched;

namespace {

// Exact optimum of the finite-horizon problem with stage cost
// x'Qx + u'Ru and terminal x'Qf x, by backward value recursion.
double riccati_optimal_cost(const LinearQuadraticSystem& sys) {
  const Eigen::MatrixXd& a = sys.a();
  const Eigen::MatrixXd& b = sys.b();
  Eigen::MatrixXd value = sys.qf();
  for (int k = sys.horizon() - 1; k >= 0; --k) {
    const Eigen::MatrixXd bvb = sys.r() + b.transpose() * value * b;
    const Eigen::MatrixXd bva = b.transpose() * value * a;
    value = sys.q() + a.transpose() * value * a -
            bva.transpose() * bvb.inverse() * bva;
    value = 0.5 * (value + value.transpose()).eval();
  }
  const Eigen::VectorXd x0 = sys.initial_state();
  return x0.dot(value * x0);
}

}  // namespace

TEST_CASE("the optimizer reproduces the closed-form quadratic optimum") {
  const auto sys = make_double_integrator_lq(0.1, 50, 1.0, 0.1, 0.01,
                                             Eigen::Vector2d(1.0, 0.0));
  IlqrConfig cfg;
  cfg.restarts = 1;
  const IlqrResult result = ilqr_oracle(*sys, cfg);
  const double expected = riccati_optimal_cost(*sys);
  CHECK(std::abs(result.cost - expected) <= 1e-6 * expected);
  CHECK(result.converged);
}

TEST_CASE("restarting from a converged solution accepts no iterations") {
  const auto sys = make_double_integrator_lq(0.1, 30, 1.0, 0.1, 0.05,
                                             Eigen::Vector2d(1.0, -0.5));
  IlqrConfig cfg;
  cfg.restarts = 1;
  const IlqrResult solved = ilqr_oracle(*sys, cfg);
  const IlqrResult again = ilqr_oracle(*sys, solved.controls, cfg);
  CHECK(again.iterations_accepted == 0);
  CHECK(again.cost == solved.cost);
  CHECK(again.converged);
}

TEST_CASE("accepted iterations strictly decrease the cost") {
  CartpoleParams params;
  params.horizon = 40;
  CartpoleContinuous system(params);
  IlqrConfig cfg;
  cfg.restarts = 1;
  cfg.max_iterations = 60;
  const IlqrResult result = ilqr_oracle(system, cfg);
  REQUIRE(result.cost_history.size() >= 2);
  for (std::size_t i = 1; i < result.cost_history.size(); ++i) {
    CHECK(result.cost_history[i] < result.cost_history[i - 1]);
  }
  CHECK(result.iterations_accepted ==
        static_cast<int>(result.cost_history.size()) - 1);
}

TEST_CASE("finite-difference jacobians are self-consistent across step sizes") {
  CartpoleParams params;
  CartpoleContinuous system(params);
  Rng rng(19);
  Eigen::MatrixXd a_coarse, b_coarse, a_fine, b_fine;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(4);
    for (int d = 0; d < 4; ++d) x[d] = 2.0 * (rng.uniform01() - 0.5);
    Eigen::VectorXd u(1);
    u[0] = 8.0 * (rng.uniform01() - 0.5);
    finite_diff_step_jacobians(system, x, u, 0, 1e-5, 1e-8, a_coarse, b_coarse);
    finite_diff_step_jacobians(system, x, u, 0, 1e-6, 1e-9, a_fine, b_fine);
    CHECK((a_coarse - a_fine).norm() <= 1e-4 * std::max(1.0, a_fine.norm()));
    CHECK((b_coarse - b_fine).norm() <= 1e-4 * std::max(1.0, b_fine.norm()));
  }
}

TEST_CASE("multi-start swing-up reaches a near-upright local optimum") {
  CartpoleParams params;  // horizon 100
  CartpoleContinuous system(params);
  IlqrConfig cfg;
  const IlqrResult result = ilqr_oracle(system, cfg);
  const double theta_terminal = result.states.back()[0];
  CHECK(std::abs(std::cos(theta_terminal) - 1.0) < 0.1);
  CHECK(result.cost < 45.0);
  for (const auto& u : result.controls) {
    CHECK(u[0] >= params.u_min - 1e-12);
    CHECK(u[0] <= params.u_max + 1e-12);
  }
}

TEST_CASE("the oracle rejects control sequences of the wrong length") {
  CartpoleParams params;
  CartpoleContinuous system(params);
  CHECK_THROWS_AS(
      ilqr_oracle(system, std::vector<Eigen::VectorXd>(3, Eigen::VectorXd::Zero(1))),
      std::invalid_argument);
}
