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

#include "modesched/schedule.hpp"

#include <charconv>
#include <stdexcept>

namespace modesched {

namespace {

std::int64_t pair_offset(int horizon, int start) {
  // Number of (start', duration) pairs with start' < start.
  const std::int64_t mu = start;
  const std::int64_t t = horizon;
  return mu * t - mu * (mu - 1) / 2;
}

int parse_int(std::string_view token, const char* what) {
  int value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument(std::string(what) + ": bad integer '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Schedule Schedule::uniform(int horizon, ModeId mode) {
  if (horizon < 1) throw std::invalid_argument("Schedule::uniform: horizon must be >= 1");
  return Schedule(std::vector<ModeId>(static_cast<std::size_t>(horizon), mode));
}

Schedule Schedule::shifted(ModeId fill) const {
  if (modes_.empty()) throw std::invalid_argument("Schedule::shifted: empty schedule");
  std::vector<ModeId> out(modes_.begin() + 1, modes_.end());
  out.push_back(fill);
  return Schedule(std::move(out));
}

Schedule stitch(const Schedule& base, const SwitchTuple& sw) {
  const int horizon = base.horizon();
  if (sw.mode < 0) throw std::invalid_argument("stitch: mode must be non-negative");
  if (sw.start < 0 || sw.start >= horizon) {
    throw std::invalid_argument("stitch: start outside [0, horizon)");
  }
  if (sw.duration < 0 || sw.start + sw.duration > horizon) {
    throw std::invalid_argument("stitch: window exceeds the horizon");
  }
  std::vector<ModeId> modes = base.modes();
  for (int k = sw.start; k < sw.start + sw.duration; ++k) {
    modes[static_cast<std::size_t>(k)] = sw.mode;
  }
  return Schedule(std::move(modes));
}

RunLengthSchedule to_run_length(const Schedule& schedule) {
  if (schedule.empty()) throw std::invalid_argument("to_run_length: empty schedule");
  RunLengthSchedule rle;
  RunSegment current{schedule[0], 0, 1};
  for (int k = 1; k < schedule.horizon(); ++k) {
    if (schedule[k] == current.mode) {
      ++current.length;
    } else {
      rle.segments.push_back(current);
      current = RunSegment{schedule[k], k, 1};
    }
  }
  rle.segments.push_back(current);
  return rle;
}

Schedule from_run_length(const RunLengthSchedule& rle) {
  if (rle.segments.empty()) throw std::invalid_argument("from_run_length: no segments");
  std::vector<ModeId> modes;
  int expected_start = 0;
  for (const RunSegment& seg : rle.segments) {
    if (seg.start != expected_start) {
      throw std::invalid_argument("from_run_length: segments are not contiguous");
    }
    if (seg.length < 1) throw std::invalid_argument("from_run_length: segment length must be >= 1");
    modes.insert(modes.end(), static_cast<std::size_t>(seg.length), seg.mode);
    expected_start += seg.length;
  }
  return Schedule(std::move(modes));
}

std::int64_t candidate_count(int mode_count, int horizon) {
  if (mode_count < 1) throw std::invalid_argument("candidate_count: mode_count must be >= 1");
  if (horizon < 1) throw std::invalid_argument("candidate_count: horizon must be >= 1");
  const std::int64_t m = mode_count;
  const std::int64_t t = horizon;
  return m * t * (t + 1) / 2;
}

SwitchTuple candidate_from_index(int mode_count, int horizon, std::int64_t index) {
  const std::int64_t total = candidate_count(mode_count, horizon);
  if (index < 0 || index >= total) {
    throw std::out_of_range("candidate_from_index: index outside [0, candidate_count)");
  }
  const std::int64_t per_mode = static_cast<std::int64_t>(horizon) * (horizon + 1) / 2;
  const ModeId mode = static_cast<ModeId>(index / per_mode);
  const std::int64_t pair = index % per_mode;
  // Largest start with pair_offset(start) <= pair.
  int lo = 0, hi = horizon - 1;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (pair_offset(horizon, mid) <= pair) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  const int start = lo;
  const int duration = static_cast<int>(pair - pair_offset(horizon, start)) + 1;
  return SwitchTuple{mode, start, duration};
}

std::int64_t candidate_to_index(int mode_count, int horizon, const SwitchTuple& sw) {
  if (sw.mode < 0 || sw.mode >= mode_count) {
    throw std::invalid_argument("candidate_to_index: mode outside [0, mode_count)");
  }
  if (sw.start < 0 || sw.start >= horizon) {
    throw std::invalid_argument("candidate_to_index: start outside [0, horizon)");
  }
  if (sw.duration < 1 || sw.start + sw.duration > horizon) {
    throw std::invalid_argument("candidate_to_index: duration outside [1, horizon - start]");
  }
  const std::int64_t per_mode = static_cast<std::int64_t>(horizon) * (horizon + 1) / 2;
  return sw.mode * per_mode + pair_offset(horizon, sw.start) + (sw.duration - 1);
}

std::string to_csv_line(const Schedule& schedule) {
  std::string out;
  for (int k = 0; k < schedule.horizon(); ++k) {
    if (k > 0) out.push_back(',');
    out += std::to_string(schedule[k]);
  }
  return out;
}

Schedule schedule_from_csv_line(std::string_view line) {
  std::vector<ModeId> modes;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t comma = line.find(',', pos);
    const std::string_view token =
        line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    modes.push_back(static_cast<ModeId>(parse_int(token, "schedule_from_csv_line")));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Schedule(std::move(modes));
}

std::string to_text(const RunLengthSchedule& rle) {
  std::string out;
  for (const RunSegment& seg : rle.segments) {
    out += std::to_string(seg.mode);
    out.push_back(':');
    out += std::to_string(seg.start);
    out.push_back(':');
    out += std::to_string(seg.length);
    out.push_back('\n');
  }
  return out;
}

RunLengthSchedule run_length_from_text(std::string_view text) {
  RunLengthSchedule rle;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty()) {
      const std::size_t c1 = line.find(':');
      const std::size_t c2 = c1 == std::string_view::npos ? std::string_view::npos : line.find(':', c1 + 1);
      if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
        throw std::invalid_argument("run_length_from_text: expected mode:start:length");
      }
      RunSegment seg;
      seg.mode = static_cast<ModeId>(parse_int(line.substr(0, c1), "run_length_from_text"));
      seg.start = parse_int(line.substr(c1 + 1, c2 - c1 - 1), "run_length_from_text");
      seg.length = parse_int(line.substr(c2 + 1), "run_length_from_text");
      rle.segments.push_back(seg);
    }
    pos = eol + 1;
  }
  return rle;
}

}  // namespace modesched
