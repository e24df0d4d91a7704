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

#include "modesched/candidate_space.hpp"

#include <stdexcept>

namespace modesched {

CandidateSpace::CandidateSpace(int mode_count, int horizon, std::uint64_t seed)
    : mode_count_(mode_count),
      horizon_(horizon),
      total_(candidate_count(mode_count, horizon)),
      rng_(seed) {}

std::int64_t CandidateSpace::draw_index() {
  const std::int64_t slot = cursor_ + rng_.uniform_below(total_ - cursor_);
  const auto at = [this](std::int64_t s) {
    const auto it = displaced_.find(s);
    return it == displaced_.end() ? s : it->second;
  };
  const std::int64_t value = at(slot);
  if (slot != cursor_) {
    displaced_[slot] = at(cursor_);
  }
  displaced_.erase(cursor_);
  ++cursor_;
  return value;
}

std::vector<SwitchTuple> CandidateSpace::draw_batch(int n) {
  if (n < 1) throw std::invalid_argument("CandidateSpace::draw_batch: n must be >= 1");
  std::vector<SwitchTuple> batch;
  const std::int64_t count = std::min<std::int64_t>(n, remaining());
  batch.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    batch.push_back(candidate_from_index(mode_count_, horizon_, draw_index()));
  }
  return batch;
}

void CandidateSpace::reset() {
  cursor_ = 0;
  displaced_.clear();
}

}  // namespace modesched
