// Copyright 2026 The dilationlab Authors
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

#ifndef DILATIONLAB_EXPERIMENT_HPP_
#define DILATIONLAB_EXPERIMENT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "dilationlab/config.hpp"

namespace dilationlab {

struct Row {
  int cell = 0;
  std::vector<std::string> fields;  // columns between `cell` and `runtime_ms`
  double residual = 0.0;
  bool pass = true;
  double runtime_ms = 0.0;
  std::string note;
  bool scored = true;  // false for informational rows
};

struct Report {
  std::string experiment;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<std::string> columns;  // full CSV header
  std::vector<Row> rows;             // sorted by cell
  double max_residual = 0.0;
  bool pass = true;
  std::vector<int> failed_cells;
};

struct RunOptions {
  bool timing = true;  // false writes runtime_ms as 0
  int threads = 0;     // 0: DILATIONLAB_THREADS or hardware concurrency
};

// CSV header for an experiment, as documented in --help.
std::vector<std::string> csv_columns(const std::string& experiment);

// Runs a validated configuration, writes <out>/<experiment>.csv and
// <out>/<experiment>.json and returns the report.
Report run(const ExperimentConfig& config, const std::filesystem::path& out_dir,
           const RunOptions& options = {});

std::string csv_text(const Report& report, bool timing);
std::string json_text(const Report& report, bool timing);

int thread_budget(int requested);

}  // namespace dilationlab

#endif  // DILATIONLAB_EXPERIMENT_HPP_
