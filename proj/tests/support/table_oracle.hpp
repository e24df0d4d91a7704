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
//
// Test-side oracles for finite lookup systems. Everything here recomputes
// costs and searches with plain loops over the raw tables, independent of
// the library's rollout and solver paths, so it can certify them.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <tuple>
#include <vector>

#include "modesched/rng.hpp"
#include "modesched/table_system.hpp"

namespace modesched::testing {

struct TableProblem {
  std::vector<std::vector<int>> transitions;  // [state][mode]
  std::vector<double> costs;                  // [state]
  int horizon = 0;
  int initial_state = 0;

  int mode_count() const { return static_cast<int>(transitions[0].size()); }

  std::unique_ptr<TableSystem> system() const {
    return std::make_unique<TableSystem>(transitions, costs, horizon, initial_state, 1.0);
  }
};

inline TableProblem random_table_problem(std::uint64_t seed, int states, int modes,
                                         int horizon) {
  Rng rng(seed);
  TableProblem problem;
  problem.horizon = horizon;
  problem.initial_state = 0;
  problem.transitions.resize(static_cast<std::size_t>(states));
  problem.costs.resize(static_cast<std::size_t>(states));
  for (int s = 0; s < states; ++s) {
    problem.transitions[static_cast<std::size_t>(s)].resize(static_cast<std::size_t>(modes));
    for (int m = 0; m < modes; ++m) {
      problem.transitions[static_cast<std::size_t>(s)][static_cast<std::size_t>(m)] =
          static_cast<int>(rng.uniform_below(states));
    }
    problem.costs[static_cast<std::size_t>(s)] = rng.uniform01();
  }
  return problem;
}

// Objective of a mode sequence, recomputed by direct table walking: stage
// costs over steps 0..T (the final index repeats the last mode; lookup
// costs do not depend on the mode, so this is a plain state-cost sum) with
// dt = 1 and no terminal cost.
inline double hand_cost(const TableProblem& problem, const std::vector<int>& modes) {
  int state = problem.initial_state;
  double total = problem.costs[static_cast<std::size_t>(state)];
  for (int mode : modes) {
    state = problem.transitions[static_cast<std::size_t>(state)][static_cast<std::size_t>(mode)];
    total += problem.costs[static_cast<std::size_t>(state)];
  }
  return total;
}

struct HandSwitch {
  int mode = 0;
  int start = 0;
  int duration = 0;
  double cost = 0.0;
};

// Full enumeration of every single-switch edit of `base`, minimum by
// (cost, mode, start, duration).
inline HandSwitch hand_best_single_switch(const TableProblem& problem,
                                          const std::vector<int>& base) {
  HandSwitch best;
  best.cost = std::numeric_limits<double>::infinity();
  bool first = true;
  for (int mode = 0; mode < problem.mode_count(); ++mode) {
    for (int start = 0; start < problem.horizon; ++start) {
      for (int duration = 1; duration + start <= problem.horizon; ++duration) {
        std::vector<int> edited = base;
        for (int k = start; k < start + duration; ++k) {
          edited[static_cast<std::size_t>(k)] = mode;
        }
        const double cost = hand_cost(problem, edited);
        if (first || cost < best.cost) {
          best = HandSwitch{mode, start, duration, cost};
          first = false;
        }
      }
    }
  }
  return best;
}

// True when no single-switch edit improves on `base` by more than `tol`.
inline bool hand_is_local_optimum(const TableProblem& problem, const std::vector<int>& base,
                                  double tol) {
  return !(hand_best_single_switch(problem, base).cost < hand_cost(problem, base) - tol);
}

// Global optimum over all mode_count^horizon sequences.
inline double hand_global_optimum(const TableProblem& problem) {
  const int modes = problem.mode_count();
  std::vector<int> sequence(static_cast<std::size_t>(problem.horizon), 0);
  double best = hand_cost(problem, sequence);
  while (true) {
    int pos = 0;
    while (pos < problem.horizon) {
      if (++sequence[static_cast<std::size_t>(pos)] < modes) break;
      sequence[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == problem.horizon) break;
    best = std::min(best, hand_cost(problem, sequence));
  }
  return best;
}

// Fixture with exactly one improving single switch: horizon 1, modes map
// the start state to per-mode successor states, and only `good_mode`
// reaches the zero-cost state.
inline TableProblem planted_single_improvement(int modes, int good_mode) {
  TableProblem problem;
  problem.horizon = 1;
  problem.initial_state = 0;
  // State 0 is the start (cost 1); state m+1 is where mode m lands.
  problem.transitions.resize(static_cast<std::size_t>(modes) + 1);
  problem.costs.assign(static_cast<std::size_t>(modes) + 1, 1.0);
  for (int s = 0; s <= modes; ++s) {
    problem.transitions[static_cast<std::size_t>(s)].resize(static_cast<std::size_t>(modes));
    for (int m = 0; m < modes; ++m) {
      problem.transitions[static_cast<std::size_t>(s)][static_cast<std::size_t>(m)] = m + 1;
    }
  }
  problem.costs[static_cast<std::size_t>(good_mode) + 1] = 0.0;
  return problem;
}

}  // namespace modesched::testing
