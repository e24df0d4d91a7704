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

#include <filesystem>
#include <string>
#include <vector>

#include "modesched/config.hpp"

namespace modesched {

struct Artifact {
  std::string name;       // path relative to the run directory
  std::int64_t rows = 0;  // data rows (CSV) or lines (text files)
};

struct RunResult {
  std::string run_id;  // config-hash prefix; also the run directory name
  std::filesystem::path run_dir;
  std::vector<Artifact> artifacts;
  std::vector<std::uint64_t> seeds;
};

struct RunOptions {
  int threads = 1;
};

// Experiment drivers behind the CLI subcommands. Each writes its artifacts
// under <output_dir>/<experiment>/<run_id>/ plus a manifest.json listing
// every emitted file; identical config + seed reproduce byte-identical
// files regardless of the thread count.
RunResult run_solve(const ExperimentConfig& config, const RunOptions& options = {});
RunResult run_compare(const ExperimentConfig& config, const RunOptions& options = {});
RunResult run_sweep_horizon(const ExperimentConfig& config, const RunOptions& options = {});
RunResult run_mpc(const ExperimentConfig& config, const RunOptions& options = {});

// Dispatches on config.kind.
RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace modesched
