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

#include <cstdint>
#include <string>
#include <vector>

#include "modesched/rollout.hpp"
#include "modesched/schedule.hpp"
#include "modesched/system.hpp"

namespace modesched {

enum class BaselineMethod { kRandomShooting, kCem, kMppi, kIlqr };

struct BaselineConfig {
  BaselineMethod method = BaselineMethod::kRandomShooting;
  int samples = 25;           // rollouts per iteration
  int iterations = 50;
  double elite_fraction = 0.1;   // cem
  double smoothing = 1e-3;       // cem additive smoothing
  double temperature = 0.1;      // mppi lambda
  double noise_sigma = 1.0;      // mppi control noise scale
  double mutation_rate = 0.25;   // random shooting per-position resample rate
  std::uint64_t seed = 0;
  int threads = 1;
};

// Throws std::invalid_argument on out-of-range parameters.
void validate(const BaselineConfig& config);

const char* to_string(BaselineMethod method);
BaselineMethod baseline_method_from_string(const std::string& name);

struct RandomShootingResult {
  Schedule schedule;
  double cost = 0.0;
  std::vector<double> best_cost_history;  // non-increasing, one entry per iteration
  std::int64_t evaluations = 0;
};

// Keep-best search around an incumbent: every iteration draws `samples`
// candidates by resampling a random subset of positions uniformly over the
// modes, and the incumbent is replaced whenever a candidate beats it.
RandomShootingResult random_shooting(const SystemModel& system, const Schedule& initial,
                                     const BaselineConfig& config);

struct CemResult {
  Schedule schedule;  // best sequence seen
  double cost = 0.0;
  std::vector<double> best_cost_history;
  std::int64_t evaluations = 0;
  // probabilities[t][m]: final per-step categorical over modes.
  std::vector<std::vector<double>> probabilities;
};

// Per-step categorical distribution over modes, refit each iteration to the
// elite fraction of the sampled sequences with additive smoothing.
CemResult cem_categorical(const SystemModel& system, const BaselineConfig& config);

// Elite refit: probabilities proportional to (count + smoothing). Exposed
// for direct testing.
std::vector<std::vector<double>> refit_categorical(const std::vector<Schedule>& elites,
                                                   int horizon, int mode_count,
                                                   double smoothing);

struct MppiResult {
  std::vector<Eigen::VectorXd> controls;  // horizon entries
  double cost = 0.0;
  std::vector<double> cost_history;  // nominal cost after each iteration
  std::int64_t evaluations = 0;
  std::vector<double> last_weights;
  // (sum, min) of the normalized weights, one entry per iteration.
  std::vector<std::pair<double, double>> weight_stats;
  bool diverged = false;  // every rollout of some iteration diverged
};

// Path-integral update: perturb the nominal control sequence with Gaussian
// noise, clamp to the control bounds, and replace the nominal with the
// exp(-(J - J_min)/temperature)-weighted average of the perturbed
// sequences.
MppiResult mppi_continuous(const ContinuousSystem& system, const BaselineConfig& config);

struct GapReport {
  std::string method;
  int horizon = 0;
  double objective = 0.0;
  double oracle_objective = 0.0;
  double normalized_gap = 0.0;  // (objective - oracle) / horizon
};

// Throws std::invalid_argument when the horizons differ.
GapReport measure_gap(const std::string& method, int method_horizon, double method_objective,
                      int oracle_horizon, double oracle_objective);

}  // namespace modesched
