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
#include <unordered_map>
#include <vector>

#include "modesched/rng.hpp"
#include "modesched/schedule.hpp"

namespace modesched {

// Uniform without-replacement sampler over the candidate set of a
// (mode_count, horizon) problem. Implemented as a lazily advanced
// Fisher-Yates permutation over candidate indices: memory is O(drawn) and
// the set itself is never materialized, which matters since its size grows
// quadratically with the horizon.
//
// Draw state is single-owner mutable; drawn batches are plain values and
// may be handed to parallel evaluators.
class CandidateSpace {
 public:
  CandidateSpace(int mode_count, int horizon, std::uint64_t seed);

  int mode_count() const { return mode_count_; }
  int horizon() const { return horizon_; }

  // Total number of candidates: mode_count * horizon * (horizon + 1) / 2.
  std::int64_t total() const { return total_; }

  // Candidates not yet drawn since the last reset.
  std::int64_t remaining() const { return total_ - cursor_; }

  // Draws min(n, remaining()) candidates uniformly from the not-yet-drawn
  // subset. Returns an empty vector once the space is exhausted, which
  // callers must treat as "no unseen candidate exists". Throws
  // std::invalid_argument if n < 1.
  std::vector<SwitchTuple> draw_batch(int n);

  // Makes every candidate drawable again. The permutation is reshuffled
  // from the generator's next state, so successive passes differ while the
  // whole stream stays reproducible from the construction seed.
  void reset();

 private:
  std::int64_t draw_index();

  int mode_count_;
  int horizon_;
  std::int64_t total_;
  std::int64_t cursor_ = 0;
  Rng rng_;
  // Sparse Fisher-Yates state: slot -> value for slots whose value was
  // displaced by an earlier draw. Absent slots hold their own index.
  std::unordered_map<std::int64_t, std::int64_t> displaced_;
};

}  // namespace modesched
