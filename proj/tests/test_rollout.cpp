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

#include "modesched/cartpole.hpp"
#include "modesched/linear_quadratic.hpp"
#include "modesched/rng.hpp"
#include "modesched/rollout.hpp"
#include "modesched/table_system.hpp"

using namespace modesched;

namespace {

// Blows up geometrically; used to exercise the divergence guard.
class ExplodingSystem final : public SystemModel {
 public:
  int state_dim() const override { return 1; }
  int mode_count() const override { return 2; }
  int horizon() const override { return 100; }
  double dt() const override { return 1.0; }
  const Eigen::VectorXd& initial_state() const override { return x0_; }
  void step_into(const Eigen::VectorXd& x, int, ModeId, Eigen::VectorXd& next) const override {
    next.resize(1);
    next[0] = x[0] * 1e6;
  }
  double stage_cost(const Eigen::VectorXd& x, ModeId) const override { return x[0] * x[0]; }
  double terminal_cost(const Eigen::VectorXd&) const override { return 0.0; }
  std::unique_ptr<SystemModel> reconfigured(int, const Eigen::VectorXd&) const override {
    return std::make_unique<ExplodingSystem>();
  }

 private:
  Eigen::VectorXd x0_ = Eigen::VectorXd::Ones(1);
};

}  // namespace

TEST_CASE("table rollout equals the hand-summed lookup costs") {
  // Chain 0 -> 1 -> 2 -> 3 under mode 1, self loops under mode 0.
  TableSystem sys({{0, 1}, {1, 2}, {2, 3}, {3, 3}}, {3.0, 1.0, 0.5, 0.0}, 6, 0);
  const Schedule all_advance = Schedule::uniform(6, 1);
  const TrajectoryRecord record = evaluate(sys, all_advance);
  // Visited states: 0,1,2,3,3,3,3 -> costs 3 + 1 + 0.5 + 0*4, terminal 0.
  CHECK(record.total_cost == 4.5);
  CHECK(record.states.size() == 7);
  CHECK(record.stage_costs.size() == 7);
  CHECK_FALSE(record.diverged);

  double hand_sum = 0.0;
  for (double c : record.stage_costs) hand_sum += c;
  CHECK(record.total_cost == hand_sum);  // terminal cost is zero here
}

TEST_CASE("cartpole all-zero-force schedule from equilibrium costs nothing") {
  CartpoleParams p;
  p.initial_state = Eigen::Vector4d::Zero();
  const auto sys = build_cartpole(p);
  const Schedule rest = Schedule::uniform(100, sys->neutral_mode());
  const TrajectoryRecord record = evaluate(*sys, rest);
  CHECK(record.total_cost == doctest::Approx(0.0));
  CHECK(record.states.size() == 101);
}

TEST_CASE("repeated evaluation of the same schedule is bit-identical") {
  const auto sys = build_cartpole();
  Rng rng(3);
  std::vector<ModeId> modes(100);
  for (auto& m : modes) m = static_cast<ModeId>(rng.uniform_below(5));
  const Schedule schedule(std::move(modes));
  const double a = evaluate_cost(*sys, schedule);
  const double b = evaluate_cost(*sys, schedule);
  CHECK(a == b);
  CHECK(evaluate(*sys, schedule).total_cost == a);
}

TEST_CASE("total cost decomposes into stage costs plus terminal cost") {
  const auto sys = build_cartpole();
  const Schedule schedule = Schedule::uniform(100, 3);
  const TrajectoryRecord record = evaluate(*sys, schedule);
  double sum = 0.0;
  for (double c : record.stage_costs) sum += c;
  sum += sys->terminal_cost(record.states.back());
  CHECK(record.total_cost == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("switch-overlay evaluation matches stitch-then-evaluate bitwise") {
  const auto sys = build_cartpole();
  Rng rng(17);
  RolloutScratch scratch;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ModeId> modes(100);
    for (auto& m : modes) m = static_cast<ModeId>(rng.uniform_below(5));
    const Schedule base(std::move(modes));
    SwitchTuple sw;
    sw.mode = static_cast<ModeId>(rng.uniform_below(5));
    sw.start = static_cast<int>(rng.uniform_below(100));
    sw.duration = static_cast<int>(rng.uniform_below(100 - sw.start + 1));
    const double overlay = evaluate_switch_cost(*sys, base, sw, scratch);
    const double stitched = evaluate_cost(*sys, stitch(base, sw));
    CHECK(overlay == stitched);
  }
}

TEST_CASE("divergence poisons the rollout with an infinite total") {
  ExplodingSystem sys;
  const TrajectoryRecord record = evaluate(sys, Schedule::uniform(100, 0));
  CHECK(record.diverged);
  CHECK(std::isinf(record.total_cost));
  CHECK(record.total_cost > 0);
  CHECK(record.states.size() < 101);  // truncated at the first bad state
  CHECK(evaluate_cost(sys, Schedule::uniform(100, 0)) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("rollout rejects schedules of the wrong length") {
  const auto sys = build_cartpole();
  CHECK_THROWS_AS(evaluate_cost(*sys, Schedule::uniform(99, 0)), std::invalid_argument);
}

TEST_CASE("continuous rollout accumulates stage plus terminal costs") {
  const auto lq = make_double_integrator_lq(0.1, 3, 1.0, 1.0, 1.0, Eigen::Vector2d(1.0, 0.0));
  std::vector<Eigen::VectorXd> controls(3, Eigen::VectorXd::Zero(1));
  controls[0][0] = 0.5;
  double expected = 0.0;
  Eigen::VectorXd x = lq->initial_state();
  for (int k = 0; k < 3; ++k) {
    expected += lq->stage_cost(x, controls[static_cast<std::size_t>(k)]);
    x = lq->step(x, k, controls[static_cast<std::size_t>(k)]);
  }
  expected += lq->terminal_cost(x);
  CHECK(evaluate_controls(*lq, controls) == doctest::Approx(expected).epsilon(1e-15));
}
