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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace modesched {

// 0-based mode index into a system's mode set [0, M-1].
using ModeId = std::int32_t;

// A mode assignment for every discrete step of a fixed planning horizon T.
// Schedules are immutable values; editing operations return new schedules.
class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(std::vector<ModeId> modes) : modes_(std::move(modes)) {}

  // Horizon-long schedule holding `mode` at every step.
  static Schedule uniform(int horizon, ModeId mode);

  int horizon() const { return static_cast<int>(modes_.size()); }
  bool empty() const { return modes_.empty(); }
  ModeId operator[](int k) const { return modes_[static_cast<std::size_t>(k)]; }
  const std::vector<ModeId>& modes() const { return modes_; }

  // Receding-horizon shift: drop the first entry, append `fill` at the end.
  Schedule shifted(ModeId fill) const;

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::vector<ModeId> modes_;
};

// A single candidate change: apply `mode` from step `start` for `duration`
// steps, i.e. overwrite the half-open window [start, start + duration).
// duration == 0 is the identity transition and leaves any schedule intact.
struct SwitchTuple {
  ModeId mode = 0;
  int start = 0;
  int duration = 0;

  // Lexicographic by (mode, start, duration); used for deterministic
  // tie-breaking when candidates have equal cost.
  friend auto operator<=>(const SwitchTuple&, const SwitchTuple&) = default;
};

// One maximal run of a schedule: `mode` held from `start` for `length` steps.
struct RunSegment {
  ModeId mode = 0;
  int start = 0;
  int length = 0;

  friend bool operator==(const RunSegment&, const RunSegment&) = default;
};

// Maximal-run segmentation of a schedule. Segments are contiguous, cover
// [0, T), and adjacent segments hold distinct modes.
struct RunLengthSchedule {
  std::vector<RunSegment> segments;

  friend bool operator==(const RunLengthSchedule&, const RunLengthSchedule&) = default;
};

// Returns `base` with the window [start, start + duration) set to sw.mode.
// Throws std::invalid_argument if the switch does not fit the horizon.
Schedule stitch(const Schedule& base, const SwitchTuple& sw);

// Maximal-run segmentation; throws std::invalid_argument on an empty input.
RunLengthSchedule to_run_length(const Schedule& schedule);

// Inverse of to_run_length. Validates contiguity of the segments.
Schedule from_run_length(const RunLengthSchedule& rle);

// --- Candidate indexing -----------------------------------------------------
//
// The candidate set for a (mode_count, horizon) problem is every tuple
// (m, start, duration) with duration in [1, horizon - start]; identity
// tuples are excluded since they cannot change a schedule. The functions
// below give a bijection between [0, candidate_count) and that set, ordered
// lexicographically by (mode, start, duration), which lets callers enumerate
// or sample the set without materializing it.

// M * T * (T + 1) / 2.
std::int64_t candidate_count(int mode_count, int horizon);

// Tuple for `index`; throws std::out_of_range outside [0, candidate_count).
SwitchTuple candidate_from_index(int mode_count, int horizon, std::int64_t index);

// Inverse of candidate_from_index; throws std::invalid_argument for tuples
// outside the candidate set (including duration == 0).
std::int64_t candidate_to_index(int mode_count, int horizon, const SwitchTuple& sw);

// --- Text round trip --------------------------------------------------------

// "0,1,1,0" (no trailing newline).
std::string to_csv_line(const Schedule& schedule);
Schedule schedule_from_csv_line(std::string_view line);

// One "mode:start:length" line per segment, each newline-terminated.
std::string to_text(const RunLengthSchedule& rle);
RunLengthSchedule run_length_from_text(std::string_view text);

}  // namespace modesched
