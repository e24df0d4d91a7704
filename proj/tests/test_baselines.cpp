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

#include <cmath>

#include "modesched/baselines.hpp"
#include "modesched/cartpole.hpp"
#include "support/table_oracle.hpp"

using namespace modesched;
using namespace modesched::testing;

namespace {

// Continuous system whose dynamics explode immediately; every rollout
// diverges regardless of the controls.
class ExplodingContinuous final : public ContinuousSystem {
 public:
  int state_dim() const override { return 1; }
  int control_dim() const override { return 1; }
  int horizon() const override { return 30; }
  const Eigen::VectorXd& initial_state() const override { return x0_; }
  const Eigen::VectorXd& control_lower() const override { return lo_; }
  const Eigen::VectorXd& control_upper() const override { return hi_; }
  void step_into(const Eigen::VectorXd& x, int, const Eigen::VectorXd& u,
                 Eigen::VectorXd& next) const override {
    next.resize(1);
    next[0] = x[0] * 1e30 + u[0];
  }
  double stage_cost(const Eigen::VectorXd& x, const Eigen::VectorXd&) const override {
    return x[0] * x[0];
  }
  double terminal_cost(const Eigen::VectorXd& x) const override { return x[0] * x[0]; }

 private:
  Eigen::VectorXd x0_ = Eigen::VectorXd::Ones(1);
  Eigen::VectorXd lo_ = Eigen::VectorXd::Constant(1, -10.0);
  Eigen::VectorXd hi_ = Eigen::VectorXd::Constant(1, 10.0);
};

}  // namespace

TEST_CASE("baseline configs are validated") {
  BaselineConfig cfg;
  cfg.samples = 0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = BaselineConfig{};
  cfg.elite_fraction = 0.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = BaselineConfig{};
  cfg.temperature = 0.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = BaselineConfig{};
  cfg.noise_sigma = -1.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = BaselineConfig{};
  cfg.smoothing = 0.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("degenerate shooting budget evaluates exactly one candidate") {
  const TableProblem problem = random_table_problem(1, 6, 3, 5);
  const auto system = problem.system();
  BaselineConfig cfg;
  cfg.samples = 1;
  cfg.iterations = 1;
  cfg.seed = 9;
  const RandomShootingResult result =
      random_shooting(*system, Schedule::uniform(5, 0), cfg);
  CHECK(result.evaluations == 2);  // incumbent + the single sample
  CHECK(result.cost == evaluate_cost(*system, result.schedule));
  CHECK(result.best_cost_history.size() == 1);
}

TEST_CASE("random shooting never worsens its incumbent") {
  const TableProblem problem = random_table_problem(2, 8, 3, 6);
  const auto system = problem.system();
  BaselineConfig cfg;
  cfg.samples = 8;
  cfg.iterations = 40;
  cfg.seed = 4;
  const RandomShootingResult result =
      random_shooting(*system, Schedule::uniform(6, 0), cfg);
  for (std::size_t i = 1; i < result.best_cost_history.size(); ++i) {
    CHECK(result.best_cost_history[i] <= result.best_cost_history[i - 1]);
  }
  CHECK(result.cost == result.best_cost_history.back());
}

TEST_CASE("random shooting finds the global optimum with a generous budget") {
  const TableProblem problem = random_table_problem(6, 5, 2, 4);
  const auto system = problem.system();
  BaselineConfig cfg;
  cfg.samples = 20;
  cfg.iterations = 100;  // plenty for 16 sequences
  cfg.mutation_rate = 0.5;
  cfg.seed = 11;
  const RandomShootingResult result =
      random_shooting(*system, Schedule::uniform(4, 0), cfg);
  CHECK(result.cost == doctest::Approx(hand_global_optimum(problem)));
}

TEST_CASE("categorical refit is smoothed elite frequencies") {
  const std::vector<Schedule> elites{
      Schedule(std::vector<ModeId>{0, 1}),
      Schedule(std::vector<ModeId>{0, 2}),
      Schedule(std::vector<ModeId>{0, 1}),
      Schedule(std::vector<ModeId>{1, 1}),
  };
  const double smoothing = 1e-3;
  const auto probs = refit_categorical(elites, 2, 3, smoothing);
  const double denom = 4.0 + 3.0 * smoothing;
  CHECK(probs[0][0] == doctest::Approx((3.0 + smoothing) / denom));
  CHECK(probs[0][1] == doctest::Approx((1.0 + smoothing) / denom));
  CHECK(probs[0][2] == doctest::Approx(smoothing / denom));
  CHECK(probs[1][1] == doctest::Approx((3.0 + smoothing) / denom));
  // With the whole population as elites this is exactly the empirical
  // frequency profile, up to the smoothing mass.
  double row_sum = 0.0;
  for (double p : probs[0]) row_sum += p;
  CHECK(row_sum == doctest::Approx(1.0));
  CHECK_THROWS_AS(refit_categorical({}, 2, 3, smoothing), std::invalid_argument);
  CHECK_THROWS_AS(refit_categorical(elites, 2, 3, 0.0), std::invalid_argument);
}

TEST_CASE("cem converges onto a planted optimal mode") {
  // Mode 1 keeps the state at the zero-cost state; everything else leaks
  // to an expensive absorbing state.
  TableProblem problem;
  problem.horizon = 5;
  problem.initial_state = 0;
  problem.transitions = {{1, 0, 1}, {1, 1, 1}};
  problem.costs = {0.0, 1.0};
  const auto system = problem.system();

  BaselineConfig cfg;
  cfg.samples = 50;
  cfg.iterations = 50;
  cfg.elite_fraction = 0.1;
  cfg.seed = 21;
  const CemResult result = cem_categorical(*system, cfg);
  CHECK(result.cost == doctest::Approx(0.0));
  for (int k = 0; k < problem.horizon; ++k) {
    CHECK(result.probabilities[static_cast<std::size_t>(k)][1] > 0.9);
  }
  for (std::size_t i = 1; i < result.best_cost_history.size(); ++i) {
    CHECK(result.best_cost_history[i] <= result.best_cost_history[i - 1]);
  }
}

TEST_CASE("mppi weights are a normalized distribution every iteration") {
  CartpoleParams params;
  params.horizon = 20;
  CartpoleContinuous system(params);
  BaselineConfig cfg;
  cfg.samples = 25;
  cfg.iterations = 10;
  cfg.temperature = 0.1;
  cfg.seed = 17;
  const MppiResult result = mppi_continuous(system, cfg);
  REQUIRE(result.weight_stats.size() == 10);
  for (const auto& [sum, min_weight] : result.weight_stats) {
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(min_weight >= 0.0);
  }
}

TEST_CASE("a huge temperature flattens the mppi weights to uniform") {
  CartpoleParams params;
  params.horizon = 15;
  CartpoleContinuous system(params);
  BaselineConfig cfg;
  cfg.samples = 25;
  cfg.iterations = 1;
  cfg.temperature = 1e12;
  cfg.seed = 8;
  const MppiResult result = mppi_continuous(system, cfg);
  REQUIRE(result.last_weights.size() == 25);
  for (double w : result.last_weights) {
    CHECK(w == doctest::Approx(1.0 / 25.0).epsilon(1e-9));
  }
}

TEST_CASE("mppi improves on the zero-control nominal for the swing-up") {
  CartpoleParams params;
  params.horizon = 20;
  CartpoleContinuous system(params);
  const double zero_cost =
      evaluate_controls(system, std::vector<Eigen::VectorXd>(20, Eigen::VectorXd::Zero(1)));
  BaselineConfig cfg;
  cfg.samples = 25;
  cfg.iterations = 30;
  cfg.temperature = 0.1;
  cfg.noise_sigma = 1.0;
  cfg.seed = 2;
  const MppiResult result = mppi_continuous(system, cfg);
  CHECK(result.cost < zero_cost);
  for (const auto& u : result.controls) {
    CHECK(u[0] >= params.u_min);
    CHECK(u[0] <= params.u_max);
  }
}

TEST_CASE("mppi reports divergence when every rollout explodes") {
  ExplodingContinuous system;
  BaselineConfig cfg;
  cfg.samples = 8;
  cfg.iterations = 5;
  cfg.seed = 1;
  const MppiResult result = mppi_continuous(system, cfg);
  CHECK(result.diverged);
  CHECK(std::isinf(result.cost));
  for (const auto& u : result.controls) {
    CHECK(u[0] == 0.0);  // nominal unchanged
  }
}

TEST_CASE("gap normalization arithmetic") {
  const GapReport same = measure_gap("m", 40, 12.0, 40, 12.0);
  CHECK(same.normalized_gap == 0.0);
  const GapReport unit = measure_gap("m", 40, 52.0, 40, 12.0);
  CHECK(unit.normalized_gap == doctest::Approx(1.0));
  CHECK_THROWS_AS(measure_gap("m", 40, 12.0, 20, 12.0), std::invalid_argument);
}
