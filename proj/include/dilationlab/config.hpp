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

#ifndef DILATIONLAB_CONFIG_HPP_
#define DILATIONLAB_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dilationlab/freeword.hpp"
#include "dilationlab/matrixcore.hpp"

namespace dilationlab {

// One problem with a configuration, addressed by "section.key".
struct Diagnostic {
  std::string field;
  std::string message;

  std::string to_string() const { return field + ": " + message; }
};

struct ConfigEntry {
  std::string section;  // empty for the top level
  std::string key;
  std::string value;
  int line = 0;

  std::string path() const { return section.empty() ? key : section + "." + key; }
};

// key = value lines under optional [section] headers; '#' starts a comment.
struct RawConfig {
  std::vector<ConfigEntry> entries;
  std::vector<Diagnostic> syntax;  // malformed lines

  const ConfigEntry* find(const std::string& section,
                          const std::string& key) const;
};

RawConfig parse_config_text(const std::string& text);
RawConfig load_config(const std::filesystem::path& path);

// "re+imi" scalars, e.g. 0.5, -2i, 1-0.25i.
Complex parse_complex(const std::string& text);
// Rows separated by ';', entries by ','.
Matrix parse_matrix(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "dilate-discrete", "dilate-continuous", "poly-transport",
      "chernoff",        "feynman",           "monitor",
      "reduce",          "wordcheck",         "spectrum"};
  return names;
}

struct FamilySpec {
  int count = 0;           // random members when no explicit matrices
  double margin = 0.1;     // distance from the boundary for random draws
  double norm = 1.0;       // norm of random generators
  std::string kind;        // spectrum: "unitary" or "contraction"
  std::vector<Matrix> matrices;  // matrix.1, matrix.2, ...
  std::optional<Matrix> h0;
  std::optional<Matrix> h1;

  bool random() const { return matrices.empty() && count > 0; }
};

struct WordSpec {
  int count = 0;
  int max_length = 4;
  int max_power = 3;
  double max_time = 1.0;
  WordMode mode = WordMode::monoid;
  int expansions = 20;
  int steps = 10;
  std::vector<std::string> literals;  // word.1, word.2, ...
};

struct ExperimentConfig {
  std::string experiment;
  int dim = 2;
  std::optional<std::uint64_t> seed;
  std::vector<int> depths;
  bool auto_depth = false;
  std::optional<double> tol;
  double t = 1.0;
  double s = 0.0;
  FamilySpec family;
  WordSpec words;
  std::vector<int> uniform;               // partition.uniform
  std::vector<std::string> partitions;    // partition.explicit.1, ...
  double lambda = 2.0;                    // poly.lambda
  int degree = 24;                        // poly.degree
  int rank = 1;                           // monitor.rank
  std::vector<double> grid{0.0, 0.5, 1.0};  // reduce.grid

  std::vector<Diagnostic> parse_diagnostics;

  bool randomized() const;
};

ExperimentConfig interpret(const RawConfig& raw);
std::vector<Diagnostic> validate(const ExperimentConfig& config);

double default_tolerance(const std::string& experiment);

}  // namespace dilationlab

#endif  // DILATIONLAB_CONFIG_HPP_
