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
#include <optional>
#include <vector>

#include "modesched/candidate_space.hpp"
#include "modesched/rollout.hpp"
#include "modesched/schedule.hpp"
#include "modesched/system.hpp"

namespace modesched {

// first-improvement returns the first sampled candidate that improves on
// the incumbent; best-of-batch evaluates a whole batch and returns its
// minimum if that improves. Both cost the same rollouts per batch.
enum class AcceptancePolicy { kFirstImprovement, kBestOfBatch };

enum class InnerSolver { kExhaustive, kSampled };

// fixed-point: the exhaustive search proved no single switch improves.
// exhausted: the sampled search consumed the whole candidate set without
// finding an improvement (the same certificate, reached by sampling).
// iteration-cap: the accepted-switch cap or the evaluation budget stopped
// the loop first.
enum class Termination { kFixedPoint, kExhausted, kIterationCap };

struct SolverConfig {
  int batch_size = 64;               // candidates drawn per sampled batch
  int max_iterations = 1000;         // accepted-switch cap for the outer loop
  double tolerance = 1e-9;           // required strict improvement per switch
  AcceptancePolicy policy = AcceptancePolicy::kFirstImprovement;
  std::uint64_t seed = 0;
  int threads = 1;
  std::int64_t max_evaluations = 0;  // total rollout budget; 0 = unlimited
};

struct SingleSwitchResult {
  SwitchTuple tuple;
  double cost = 0.0;
};

// Outcome of one single-switch search plus its accounting.
struct SingleSwitchSearch {
  std::optional<SingleSwitchResult> improvement;
  std::int64_t evaluations = 0;
  int batches = 0;            // sampled search only
  bool budget_stopped = false;
};

// Evaluates every candidate (exactly candidate_count rollouts) and returns
// the minimum-cost one if it beats base_cost by more than `tolerance`.
// Ties break lexicographically by (mode, start, duration), so the result is
// independent of the worker count.
SingleSwitchSearch solve_single_switch_exhaustive(const SystemModel& system,
                                                  const Schedule& base, double base_cost,
                                                  double tolerance, int threads = 1);

// Draws without-replacement batches from `space` until an improving
// candidate appears or the space is exhausted; never more than
// ceil(total / batch_size) batches. `evaluation_budget` (0 = unlimited)
// stops the search between batches once spent.
SingleSwitchSearch solve_single_switch_sampled(const SystemModel& system, const Schedule& base,
                                               double base_cost, const SolverConfig& config,
                                               CandidateSpace& space,
                                               std::int64_t evaluation_budget = 0);

struct SolveReport {
  Schedule final_schedule;
  // cost_history[0] is the initial cost; one entry per accepted switch
  // follows. Strictly decreasing by more than the tolerance.
  std::vector<double> cost_history;
  // Cumulative rollout count aligned with cost_history.
  std::vector<std::int64_t> evaluation_history;
  std::vector<SwitchTuple> accepted_switches;
  std::int64_t evaluations = 0;
  Termination termination = Termination::kIterationCap;
};

// Outer refinement loop: repeatedly find an improving single switch, stitch
// it in, and restart the search (the candidate space is reset after every
// accepted switch). Terminates at a fixed point, on exhaustion, or at the
// iteration/evaluation cap.
SolveReport solve_iterative(const SystemModel& system, const Schedule& initial,
                            const SolverConfig& config, InnerSolver inner);

const char* to_string(Termination t);

}  // namespace modesched
