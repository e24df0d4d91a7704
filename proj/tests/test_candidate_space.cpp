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
#include <set>
#include <stdexcept>

#include "modesched/candidate_space.hpp"

using namespace modesched;

namespace {

std::set<std::int64_t> drain(CandidateSpace& space, int batch_size) {
  std::set<std::int64_t> indices;
  while (space.remaining() > 0) {
    for (const SwitchTuple& sw : space.draw_batch(batch_size)) {
      const auto [it, inserted] =
          indices.insert(candidate_to_index(space.mode_count(), space.horizon(), sw));
      REQUIRE(inserted);  // never yielded twice
    }
  }
  return indices;
}

}  // namespace

TEST_CASE("drawing to exhaustion yields every candidate exactly once") {
  for (int batch_size : {1, 2, 6, 10}) {
    CandidateSpace space(2, 2, 99);
    CHECK(space.total() == 6);
    const auto indices = drain(space, batch_size);
    CHECK(indices.size() == 6);
    CHECK(space.remaining() == 0);
    CHECK(space.draw_batch(4).empty());  // exhausted signal
  }
}

TEST_CASE("without-replacement exhaustivity at a few thousand candidates") {
  CandidateSpace space(5, 62, 7);  // 5 * 62 * 63 / 2 = 9765
  CHECK(space.total() == 9765);
  const auto indices = drain(space, 97);
  CHECK(static_cast<std::int64_t>(indices.size()) == space.total());
  CHECK(*indices.begin() == 0);
  CHECK(*indices.rbegin() == space.total() - 1);
}

TEST_CASE("batches are deterministic under a fixed seed") {
  CandidateSpace a(3, 8, 1234);
  CandidateSpace b(3, 8, 1234);
  for (int round = 0; round < 5; ++round) {
    CHECK(a.draw_batch(7) == b.draw_batch(7));
  }
}

TEST_CASE("draw_batch returns min(n, remaining) candidates") {
  CandidateSpace space(1, 3, 5);  // total 6
  CHECK(space.draw_batch(4).size() == 4);
  CHECK(space.remaining() == 2);
  CHECK(space.draw_batch(4).size() == 2);
  CHECK(space.remaining() == 0);
}

TEST_CASE("draw_batch rejects non-positive batch sizes") {
  CandidateSpace space(1, 3, 5);
  CHECK_THROWS_AS(space.draw_batch(0), std::invalid_argument);
}

TEST_CASE("reset restores the full set and keeps the stream reproducible") {
  CandidateSpace a(2, 4, 77);
  const auto first_pass = drain(a, 3);
  CHECK(a.remaining() == 0);
  a.reset();
  CHECK(a.remaining() == a.total());
  CHECK(a.total() == candidate_count(2, 4));
  const auto second_pass = drain(a, 3);
  CHECK(second_pass.size() == first_pass.size());

  // Same construction seed and draw pattern reproduce the same stream,
  // including across resets.
  CandidateSpace b(2, 4, 77);
  CandidateSpace c(2, 4, 77);
  (void)drain(b, 3);
  b.reset();
  (void)drain(c, 3);
  c.reset();
  CHECK(b.draw_batch(5) == c.draw_batch(5));
}

TEST_CASE("a planted candidate lands in the first half-size batch about half the time") {
  // 10 candidates, batches of 5: the planted index should appear in the
  // first batch with probability 1/2.
  const std::int64_t planted = 7;
  const int trials = 10000;
  int hits = 0;
  for (int trial = 0; trial < trials; ++trial) {
    CandidateSpace space(1, 4, static_cast<std::uint64_t>(trial) * 2654435761ULL + 13);
    CHECK(space.total() == 10);
    for (const SwitchTuple& sw : space.draw_batch(5)) {
      if (candidate_to_index(1, 4, sw) == planted) {
        ++hits;
        break;
      }
    }
  }
  const double frequency = static_cast<double>(hits) / trials;
  const double sigma = std::sqrt(0.25 / trials);
  CHECK(frequency > 0.5 - 3.0 * sigma);
  CHECK(frequency < 0.5 + 3.0 * sigma);
}
