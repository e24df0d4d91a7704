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
#include <fstream>

#include "modesched/cartpole.hpp"
#include "modesched/double_integrator.hpp"
#include "modesched/rng.hpp"
#include "modesched/table_system.hpp"

using namespace modesched;

TEST_CASE("cartpole defaults: five levels spanning the force range") {
  const auto sys = build_cartpole();
  CHECK(sys->horizon() == 100);
  CHECK(sys->mode_count() == 5);
  CHECK(sys->initial_state()[0] == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK(sys->force_levels() == std::vector<double>{-10.0, -5.0, 0.0, 5.0, 10.0});
  CHECK(sys->neutral_mode() == 2);
  CHECK(sys->force_level(sys->neutral_mode()) == 0.0);
}

TEST_CASE("cartpole rejects invalid parameters") {
  CartpoleParams p;
  p.mode_count = 1;
  CHECK_THROWS_AS(build_cartpole(p), std::invalid_argument);
  p = CartpoleParams{};
  p.u_min = 2.0;
  p.u_max = -2.0;
  CHECK_THROWS_AS(build_cartpole(p), std::invalid_argument);
  p = CartpoleParams{};
  p.dt = 0.0;
  CHECK_THROWS_AS(build_cartpole(p), std::invalid_argument);
}

TEST_CASE("cartpole stage cost terms") {
  const auto sys = build_cartpole();
  Eigen::VectorXd x(4);
  x << M_PI / 2, 0.0, 0.0, 0.0;
  CHECK(sys->stage_cost(x, sys->neutral_mode()) == doctest::Approx(4.0).epsilon(1e-12));
  x << 0.0, 0.0, 0.0, 0.0;
  CHECK(sys->stage_cost(x, sys->neutral_mode()) == doctest::Approx(0.0));
  // Force level 2 N contributes u^2 = 4 on top of a zero state cost.
  CartpoleParams p;
  p.u_min = -2.0;
  p.u_max = 2.0;
  const auto narrow = build_cartpole(p);
  CHECK(narrow->force_level(4) == 2.0);
  CHECK(narrow->stage_cost(x, 4) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("cartpole terminal cost at characteristic angles") {
  const auto sys = build_cartpole();
  Eigen::VectorXd x(4);
  x << 0.0, 0.0, 0.0, 0.0;
  CHECK(sys->terminal_cost(x) == doctest::Approx(0.0));
  x[0] = M_PI;
  CHECK(sys->terminal_cost(x) == doctest::Approx(16.0).epsilon(1e-12));
  x[0] = M_PI / 2;
  CHECK(sys->terminal_cost(x) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("cartpole upright equilibrium is a fixed point of the zero-force mode") {
  const auto sys = build_cartpole();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  for (int k = 0; k < 100; ++k) {
    x = sys->step(x, std::min(k, sys->horizon() - 1), sys->neutral_mode());
  }
  CHECK(x.norm() < 1e-9);
}

TEST_CASE("cartpole steps are deterministic and reject bad input") {
  const auto sys = build_cartpole();
  Eigen::VectorXd x(4);
  x << 1.0, 0.2, -0.3, 0.4;
  const Eigen::VectorXd a = sys->step(x, 0, 1);
  const Eigen::VectorXd b = sys->step(x, 0, 1);
  CHECK(a == b);  // bit-identical
  CHECK_THROWS_AS(sys->step(x, 0, 9), std::invalid_argument);
  CHECK_THROWS_AS(sys->step(x, 100, 0), std::invalid_argument);
  x[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(sys->step(x, 0, 0), NonFiniteStateError);
  CHECK_THROWS_AS(sys->stage_cost(x, 0), NonFiniteStateError);
  CHECK_THROWS_AS(sys->terminal_cost(x), NonFiniteStateError);
}

TEST_CASE("substep refinement converges at fourth order") {
  // Richardson ratios between substep counts 1, 2, 4 should sit near 2^4.
  CartpoleParams coarse;
  CartpoleParams half = coarse;
  half.rk4_substeps = 2;
  CartpoleParams quarter = coarse;
  quarter.rk4_substeps = 4;
  const auto sys1 = build_cartpole(coarse);
  const auto sys2 = build_cartpole(half);
  const auto sys4 = build_cartpole(quarter);
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd x(4);
    x[0] = 2.0 * M_PI * (rng.uniform01() - 0.5);
    x[1] = 2.0 * (rng.uniform01() - 0.5);
    x[2] = 12.0 * (rng.uniform01() - 0.5);
    x[3] = 6.0 * (rng.uniform01() - 0.5);
    for (ModeId m = 0; m < 5; ++m) {
      const Eigen::VectorXd y1 = sys1->step(x, 0, m);
      const Eigen::VectorXd y2 = sys2->step(x, 0, m);
      const Eigen::VectorXd y4 = sys4->step(x, 0, m);
      // One-step refinement error is small in absolute terms at the
      // default time step.
      CHECK((y1 - y2).cwiseAbs().maxCoeff() < 1e-4);
      const double d12 = (y1 - y2).norm();
      const double d24 = (y2 - y4).norm();
      if (d24 > 1e-12) {
        const double ratio = d12 / d24;
        CHECK(ratio > 8.0);
        CHECK(ratio < 40.0);
      }
    }
  }
}

TEST_CASE("cartpole costs are non-negative on random finite states") {
  const auto sys = build_cartpole();
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    Eigen::VectorXd x(4);
    for (int d = 0; d < 4; ++d) x[d] = 20.0 * (rng.uniform01() - 0.5);
    for (ModeId m = 0; m < sys->mode_count(); ++m) {
      CHECK(sys->stage_cost(x, m) >= 0.0);
    }
    CHECK(sys->terminal_cost(x) >= 0.0);
  }
}

TEST_CASE("cartpole reconfigure swaps horizon and initial state") {
  const auto sys = build_cartpole();
  Eigen::VectorXd x(4);
  x << 0.3, 0.0, 0.0, 0.0;
  const auto shorter = sys->reconfigured(17, x);
  CHECK(shorter->horizon() == 17);
  CHECK(shorter->initial_state() == x);
}

TEST_CASE("double integrator applies exact Euler updates") {
  DoubleIntegratorParams p;
  p.dt = 0.1;
  const auto sys = build_double_integrator(p);
  // Mode levels {-1, 0, +1}; accelerate with +1 from rest.
  CHECK(sys->acceleration_level(2) == 1.0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
  const Eigen::VectorXd next = sys->step(x, 0, 2);
  CHECK(next[0] == 0.0);
  CHECK(next[1] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(sys->neutral_mode() == 1);
}

TEST_CASE("table system follows the lookup exactly") {
  // Two states; mode 0 stays, mode 1 flips.
  TableSystem sys({{0, 1}, {1, 0}}, {1.0, 0.0}, 4, 0);
  Eigen::VectorXd x = sys.initial_state();
  CHECK(x[0] == 0.0);
  x = sys.step(x, 0, 1);
  CHECK(x[0] == 1.0);
  x = sys.step(x, 1, 0);
  CHECK(x[0] == 1.0);
  CHECK(sys.stage_cost(x, 0) == 0.0);
  CHECK(sys.terminal_cost(x) == 0.0);
}

TEST_CASE("table system validates its tables") {
  CHECK_THROWS_AS(TableSystem({{0, 2}}, {1.0}, 4, 0), std::invalid_argument);  // bad next id
  CHECK_THROWS_AS(TableSystem({{0}}, {1.0, 2.0}, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(TableSystem({{0}}, {1.0}, 4, 3), std::invalid_argument);  // bad initial id
}

TEST_CASE("table system loads the plain-text format") {
  const std::string path = "/tmp/modesched_test_table.txt";
  {
    std::ofstream out(path);
    out << "# two modes per state, cost in the last column\n";
    out << "0 1 3.0\n";
    out << "1 2 1.0\n";
    out << "2 3 0.5\n";
    out << "3 3 0.0\n";
  }
  const auto sys = TableSystem::load(path, 6, 0);
  CHECK(sys->state_count() == 4);
  CHECK(sys->mode_count() == 2);
  CHECK(sys->costs() == std::vector<double>{3.0, 1.0, 0.5, 0.0});
  Eigen::VectorXd x = sys->initial_state();
  x = sys->step(x, 0, 1);
  CHECK(x[0] == 1.0);
}
