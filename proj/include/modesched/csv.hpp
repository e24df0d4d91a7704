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
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace modesched {

// Shortest round-trip decimal rendering (std::to_chars), so emitted CSV is
// stable across runs and platforms. Infinities print as "inf"/"-inf".
std::string format_double(double value);

std::string format_int(std::int64_t value);

std::string format_uint(std::uint64_t value);

// Minimal CSV emitter: comma separator, '\n' line ends, one header row,
// no quoting (all cells are produced by the formatters above). Tracks the
// number of data rows for run manifests.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void write_row(const std::vector<std::string>& cells);
  std::int64_t rows() const { return rows_; }
  void close();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::int64_t rows_ = 0;
};

}  // namespace modesched
