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

#include "modesched/solver.hpp"

#include <limits>

#include "modesched/parallel.hpp"

namespace modesched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ChunkBest {
  double cost = kInf;
  std::int64_t index = -1;
};

}  // namespace

SingleSwitchSearch solve_single_switch_exhaustive(const SystemModel& system,
                                                  const Schedule& base, double base_cost,
                                                  double tolerance, int threads) {
  const int mode_count = system.mode_count();
  const int horizon = system.horizon();
  if (base.horizon() != horizon) {
    throw std::invalid_argument("solve_single_switch_exhaustive: schedule/horizon mismatch");
  }
  const std::int64_t total = candidate_count(mode_count, horizon);

  const int workers = plan_workers(total, threads);
  const std::int64_t chunk = plan_chunk(total, workers);
  std::vector<ChunkBest> bests(static_cast<std::size_t>((total + chunk - 1) / chunk));

  parallel_chunks(total, workers, [&](std::int64_t begin, std::int64_t end) {
    RolloutScratch scratch;
    ChunkBest best;
    for (std::int64_t index = begin; index < end; ++index) {
      const SwitchTuple sw = candidate_from_index(mode_count, horizon, index);
      const double cost = evaluate_switch_cost(system, base, sw, scratch);
      // Candidate order equals (mode, start, duration) lexicographic order,
      // so keeping the first strict minimum realizes the tie-break.
      if (cost < best.cost) {
        best.cost = cost;
        best.index = index;
      }
    }
    bests[static_cast<std::size_t>(begin / chunk)] = best;
  });

  ChunkBest winner;
  for (const ChunkBest& b : bests) {
    if (b.index < 0) continue;
    if (b.cost < winner.cost || (b.cost == winner.cost && b.index < winner.index)) {
      winner = b;
    }
  }

  SingleSwitchSearch out;
  out.evaluations = total;
  if (winner.index >= 0 && winner.cost < base_cost - tolerance) {
    out.improvement = SingleSwitchResult{
        candidate_from_index(mode_count, horizon, winner.index), winner.cost};
  }
  return out;
}

SingleSwitchSearch solve_single_switch_sampled(const SystemModel& system, const Schedule& base,
                                               double base_cost, const SolverConfig& config,
                                               CandidateSpace& space,
                                               std::int64_t evaluation_budget) {
  if (base.horizon() != system.horizon()) {
    throw std::invalid_argument("solve_single_switch_sampled: schedule/horizon mismatch");
  }
  if (space.mode_count() != system.mode_count() || space.horizon() != system.horizon()) {
    throw std::invalid_argument("solve_single_switch_sampled: candidate space mismatch");
  }
  if (config.batch_size < 1) {
    throw std::invalid_argument("solve_single_switch_sampled: batch_size must be >= 1");
  }

  SingleSwitchSearch out;
  std::vector<double> costs;
  while (space.remaining() > 0) {
    if (evaluation_budget > 0 && out.evaluations >= evaluation_budget) {
      out.budget_stopped = true;
      break;
    }
    const std::vector<SwitchTuple> batch = space.draw_batch(config.batch_size);
    ++out.batches;
    const std::int64_t n = static_cast<std::int64_t>(batch.size());
    costs.assign(batch.size(), kInf);
    parallel_chunks(n, config.threads, [&](std::int64_t begin, std::int64_t end) {
      RolloutScratch scratch;
      for (std::int64_t i = begin; i < end; ++i) {
        costs[static_cast<std::size_t>(i)] =
            evaluate_switch_cost(system, base, batch[static_cast<std::size_t>(i)], scratch);
      }
    });
    out.evaluations += n;

    if (config.policy == AcceptancePolicy::kFirstImprovement) {
      for (std::int64_t i = 0; i < n; ++i) {
        if (costs[static_cast<std::size_t>(i)] < base_cost - config.tolerance) {
          out.improvement = SingleSwitchResult{batch[static_cast<std::size_t>(i)],
                                               costs[static_cast<std::size_t>(i)]};
          return out;
        }
      }
    } else {
      std::int64_t best = -1;
      for (std::int64_t i = 0; i < n; ++i) {
        if (best < 0 || costs[static_cast<std::size_t>(i)] < costs[static_cast<std::size_t>(best)] ||
            (costs[static_cast<std::size_t>(i)] == costs[static_cast<std::size_t>(best)] &&
             batch[static_cast<std::size_t>(i)] < batch[static_cast<std::size_t>(best)])) {
          best = i;
        }
      }
      if (best >= 0 && costs[static_cast<std::size_t>(best)] < base_cost - config.tolerance) {
        out.improvement = SingleSwitchResult{batch[static_cast<std::size_t>(best)],
                                             costs[static_cast<std::size_t>(best)]};
        return out;
      }
    }
  }
  return out;
}

SolveReport solve_iterative(const SystemModel& system, const Schedule& initial,
                            const SolverConfig& config, InnerSolver inner) {
  if (initial.horizon() != system.horizon()) {
    throw std::invalid_argument("solve_iterative: schedule/horizon mismatch");
  }

  SolveReport report;
  report.final_schedule = initial;
  double cost = evaluate_cost(system, initial);
  report.evaluations = 1;
  report.cost_history.push_back(cost);
  report.evaluation_history.push_back(report.evaluations);

  CandidateSpace space(system.mode_count(), system.horizon(), config.seed);

  int accepted = 0;
  report.termination = Termination::kIterationCap;
  while (accepted < config.max_iterations) {
    if (config.max_evaluations > 0 && report.evaluations >= config.max_evaluations) {
      break;
    }
    const std::int64_t budget_left =
        config.max_evaluations > 0 ? config.max_evaluations - report.evaluations : 0;
    SingleSwitchSearch search;
    if (inner == InnerSolver::kExhaustive) {
      search = solve_single_switch_exhaustive(system, report.final_schedule, cost,
                                              config.tolerance, config.threads);
    } else {
      search = solve_single_switch_sampled(system, report.final_schedule, cost, config, space,
                                           budget_left);
    }
    report.evaluations += search.evaluations;
    if (!search.improvement) {
      if (search.budget_stopped) {
        report.termination = Termination::kIterationCap;
      } else {
        report.termination = inner == InnerSolver::kExhaustive ? Termination::kFixedPoint
                                                               : Termination::kExhausted;
      }
      break;
    }
    report.final_schedule = stitch(report.final_schedule, search.improvement->tuple);
    cost = search.improvement->cost;
    report.accepted_switches.push_back(search.improvement->tuple);
    report.cost_history.push_back(cost);
    report.evaluation_history.push_back(report.evaluations);
    ++accepted;
    space.reset();
  }
  return report;
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::kFixedPoint:
      return "fixed-point";
    case Termination::kExhausted:
      return "exhausted";
    case Termination::kIterationCap:
      return "iteration-cap";
  }
  return "unknown";
}

}  // namespace modesched
