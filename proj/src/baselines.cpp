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

#include "modesched/baselines.hpp"

#include <cmath>
#include <limits>

#include "modesched/parallel.hpp"
#include "modesched/rng.hpp"

namespace modesched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> evaluate_population(const SystemModel& system,
                                        const std::vector<Schedule>& population, int threads) {
  std::vector<double> costs(population.size(), kInf);
  parallel_chunks(static_cast<std::int64_t>(population.size()), threads,
                  [&](std::int64_t begin, std::int64_t end) {
                    RolloutScratch scratch;
                    for (std::int64_t i = begin; i < end; ++i) {
                      costs[static_cast<std::size_t>(i)] = evaluate_cost(
                          system, population[static_cast<std::size_t>(i)], scratch);
                    }
                  });
  return costs;
}

}  // namespace

void validate(const BaselineConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("baseline: samples must be >= 1");
  if (config.iterations < 1) throw std::invalid_argument("baseline: iterations must be >= 1");
  if (!(config.elite_fraction > 0.0) || config.elite_fraction > 1.0) {
    throw std::invalid_argument("baseline: elite_fraction must be in (0, 1]");
  }
  if (!(config.smoothing > 0.0)) throw std::invalid_argument("baseline: smoothing must be > 0");
  if (!(config.temperature > 0.0)) throw std::invalid_argument("baseline: temperature must be > 0");
  if (!(config.noise_sigma > 0.0)) throw std::invalid_argument("baseline: noise_sigma must be > 0");
  if (!(config.mutation_rate > 0.0) || config.mutation_rate > 1.0) {
    throw std::invalid_argument("baseline: mutation_rate must be in (0, 1]");
  }
}

const char* to_string(BaselineMethod method) {
  switch (method) {
    case BaselineMethod::kRandomShooting:
      return "random-shooting";
    case BaselineMethod::kCem:
      return "cem";
    case BaselineMethod::kMppi:
      return "mppi";
    case BaselineMethod::kIlqr:
      return "ilqr";
  }
  return "unknown";
}

BaselineMethod baseline_method_from_string(const std::string& name) {
  if (name == "random-shooting") return BaselineMethod::kRandomShooting;
  if (name == "cem") return BaselineMethod::kCem;
  if (name == "mppi") return BaselineMethod::kMppi;
  if (name == "ilqr") return BaselineMethod::kIlqr;
  throw std::invalid_argument("unknown baseline method '" + name + "'");
}

RandomShootingResult random_shooting(const SystemModel& system, const Schedule& initial,
                                     const BaselineConfig& config) {
  validate(config);
  if (initial.horizon() != system.horizon()) {
    throw std::invalid_argument("random_shooting: schedule/horizon mismatch");
  }
  const int horizon = system.horizon();
  const int mode_count = system.mode_count();
  Rng rng(config.seed);

  RandomShootingResult result;
  result.schedule = initial;
  result.cost = evaluate_cost(system, initial);
  result.evaluations = 1;

  std::vector<Schedule> population;
  population.reserve(static_cast<std::size_t>(config.samples));
  for (int iter = 0; iter < config.iterations; ++iter) {
    population.clear();
    for (int s = 0; s < config.samples; ++s) {
      std::vector<ModeId> modes = result.schedule.modes();
      for (int k = 0; k < horizon; ++k) {
        if (rng.uniform01() < config.mutation_rate) {
          modes[static_cast<std::size_t>(k)] =
              static_cast<ModeId>(rng.uniform_below(mode_count));
        }
      }
      population.emplace_back(std::move(modes));
    }
    const std::vector<double> costs = evaluate_population(system, population, config.threads);
    result.evaluations += config.samples;
    int best = 0;
    for (int s = 1; s < config.samples; ++s) {
      if (costs[static_cast<std::size_t>(s)] < costs[static_cast<std::size_t>(best)]) best = s;
    }
    if (costs[static_cast<std::size_t>(best)] < result.cost) {
      result.cost = costs[static_cast<std::size_t>(best)];
      result.schedule = population[static_cast<std::size_t>(best)];
    }
    result.best_cost_history.push_back(result.cost);
  }
  return result;
}

std::vector<std::vector<double>> refit_categorical(const std::vector<Schedule>& elites,
                                                   int horizon, int mode_count,
                                                   double smoothing) {
  if (elites.empty()) throw std::invalid_argument("refit_categorical: no elites");
  if (!(smoothing > 0.0)) throw std::invalid_argument("refit_categorical: smoothing must be > 0");
  std::vector<std::vector<double>> probabilities(
      static_cast<std::size_t>(horizon), std::vector<double>(static_cast<std::size_t>(mode_count)));
  const double denom = static_cast<double>(elites.size()) + mode_count * smoothing;
  for (int k = 0; k < horizon; ++k) {
    std::vector<int> counts(static_cast<std::size_t>(mode_count), 0);
    for (const Schedule& elite : elites) ++counts[static_cast<std::size_t>(elite[k])];
    for (int m = 0; m < mode_count; ++m) {
      probabilities[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)] =
          (counts[static_cast<std::size_t>(m)] + smoothing) / denom;
    }
  }
  return probabilities;
}

CemResult cem_categorical(const SystemModel& system, const BaselineConfig& config) {
  validate(config);
  const int horizon = system.horizon();
  const int mode_count = system.mode_count();
  Rng rng(config.seed);

  CemResult result;
  result.probabilities.assign(
      static_cast<std::size_t>(horizon),
      std::vector<double>(static_cast<std::size_t>(mode_count), 1.0 / mode_count));
  result.cost = kInf;

  const int elite_count =
      std::max(1, static_cast<int>(std::ceil(config.elite_fraction * config.samples)));

  std::vector<Schedule> population;
  std::vector<int> order(static_cast<std::size_t>(config.samples));
  for (int iter = 0; iter < config.iterations; ++iter) {
    population.clear();
    for (int s = 0; s < config.samples; ++s) {
      std::vector<ModeId> modes(static_cast<std::size_t>(horizon));
      for (int k = 0; k < horizon; ++k) {
        const double draw = rng.uniform01();
        double cumulative = 0.0;
        ModeId picked = static_cast<ModeId>(mode_count - 1);
        for (int m = 0; m < mode_count; ++m) {
          cumulative += result.probabilities[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
          if (draw < cumulative) {
            picked = static_cast<ModeId>(m);
            break;
          }
        }
        modes[static_cast<std::size_t>(k)] = picked;
      }
      population.emplace_back(std::move(modes));
    }
    const std::vector<double> costs = evaluate_population(system, population, config.threads);
    result.evaluations += config.samples;

    for (int s = 0; s < config.samples; ++s) order[static_cast<std::size_t>(s)] = s;
    std::stable_sort(order.begin(), order.end(), [&costs](int a, int b) {
      return costs[static_cast<std::size_t>(a)] < costs[static_cast<std::size_t>(b)];
    });
    std::vector<Schedule> elites;
    elites.reserve(static_cast<std::size_t>(elite_count));
    for (int e = 0; e < elite_count; ++e) {
      elites.push_back(population[static_cast<std::size_t>(order[static_cast<std::size_t>(e)])]);
    }
    result.probabilities = refit_categorical(elites, horizon, mode_count, config.smoothing);

    const int best = order[0];
    if (costs[static_cast<std::size_t>(best)] < result.cost) {
      result.cost = costs[static_cast<std::size_t>(best)];
      result.schedule = population[static_cast<std::size_t>(best)];
    }
    result.best_cost_history.push_back(result.cost);
  }
  return result;
}

MppiResult mppi_continuous(const ContinuousSystem& system, const BaselineConfig& config) {
  validate(config);
  const int horizon = system.horizon();
  const int control_dim = system.control_dim();
  const Eigen::VectorXd& lower = system.control_lower();
  const Eigen::VectorXd& upper = system.control_upper();
  Rng rng(config.seed);

  MppiResult result;
  result.controls.assign(static_cast<std::size_t>(horizon), Eigen::VectorXd::Zero(control_dim));
  result.cost = evaluate_controls(system, result.controls);
  result.evaluations = 1;

  std::vector<std::vector<Eigen::VectorXd>> samples(static_cast<std::size_t>(config.samples));
  std::vector<double> costs(static_cast<std::size_t>(config.samples));
  for (int iter = 0; iter < config.iterations; ++iter) {
    // Noise is drawn sequentially so results do not depend on the worker
    // count used for the rollouts.
    for (int s = 0; s < config.samples; ++s) {
      auto& candidate = samples[static_cast<std::size_t>(s)];
      candidate.assign(static_cast<std::size_t>(horizon), Eigen::VectorXd(control_dim));
      for (int k = 0; k < horizon; ++k) {
        for (int d = 0; d < control_dim; ++d) {
          const double u = result.controls[static_cast<std::size_t>(k)][d] +
                           config.noise_sigma * rng.normal();
          candidate[static_cast<std::size_t>(k)][d] = std::min(upper[d], std::max(lower[d], u));
        }
      }
    }
    parallel_chunks(config.samples, config.threads, [&](std::int64_t begin, std::int64_t end) {
      for (std::int64_t s = begin; s < end; ++s) {
        costs[static_cast<std::size_t>(s)] =
            evaluate_controls(system, samples[static_cast<std::size_t>(s)]);
      }
    });
    result.evaluations += config.samples;

    double min_cost = kInf;
    for (double c : costs) min_cost = std::min(min_cost, c);
    if (!std::isfinite(min_cost)) {
      result.diverged = true;
      result.cost = kInf;
      return result;
    }

    std::vector<double> weights(static_cast<std::size_t>(config.samples));
    double weight_sum = 0.0;
    for (int s = 0; s < config.samples; ++s) {
      weights[static_cast<std::size_t>(s)] =
          std::exp(-(costs[static_cast<std::size_t>(s)] - min_cost) / config.temperature);
      weight_sum += weights[static_cast<std::size_t>(s)];
    }
    double normalized_sum = 0.0;
    double min_weight = kInf;
    for (double& w : weights) {
      w /= weight_sum;
      normalized_sum += w;
      min_weight = std::min(min_weight, w);
    }
    result.weight_stats.emplace_back(normalized_sum, min_weight);

    for (int k = 0; k < horizon; ++k) {
      Eigen::VectorXd blended = Eigen::VectorXd::Zero(control_dim);
      for (int s = 0; s < config.samples; ++s) {
        blended += weights[static_cast<std::size_t>(s)] *
                   samples[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)];
      }
      result.controls[static_cast<std::size_t>(k)] = blended;
    }
    result.cost = evaluate_controls(system, result.controls);
    result.evaluations += 1;
    result.cost_history.push_back(result.cost);
    result.last_weights = weights;
  }
  return result;
}

GapReport measure_gap(const std::string& method, int method_horizon, double method_objective,
                      int oracle_horizon, double oracle_objective) {
  if (method_horizon != oracle_horizon) {
    throw std::invalid_argument("measure_gap: method and oracle horizons differ");
  }
  GapReport report;
  report.method = method;
  report.horizon = method_horizon;
  report.objective = method_objective;
  report.oracle_objective = oracle_objective;
  report.normalized_gap = (method_objective - oracle_objective) / method_horizon;
  return report;
}

}  // namespace modesched
