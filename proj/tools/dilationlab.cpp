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

// dilationlab <experiment> --config FILE --out DIR [--seed N] [--tol X]
//             [--depth M,...|auto] [--threads K] [--no-timing]
//
// Exit status: 0 all cells pass, 1 numerical failure, 2 configuration error.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dilationlab/config.hpp"
#include "dilationlab/experiment.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

std::string columns_footer() {
  std::ostringstream out;
  out << "CSV columns per experiment:\n";
  for (const auto& e : dilationlab::experiment_names()) {
    out << "  " << e << ": ";
    const auto cols = dilationlab::csv_columns(e);
    for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
    out << '\n';
  }
  out << "A JSON report with the same rows and a summary is written next to the "
         "CSV.\nDILATIONLAB_THREADS caps the number of worker threads.\n"
         "Exit status: 0 all cells pass, 1 numerical failure, 2 configuration "
         "error.";
  return out.str();
}

int config_error(const std::vector<dilationlab::Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << "config error: " << d.to_string() << '\n';
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical dilations of contraction semigroups and free words"};
  app.footer(columns_footer());

  std::string experiment;
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string depth;
  int threads = 0;
  bool no_timing = false;

  app.add_option("experiment", experiment, "experiment to run")
      ->required()
      ->check(CLI::IsMember(dilationlab::experiment_names()));
  app.add_option("--config", config_path, "configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory")->required();
  app.add_option("--seed", seed, "override the configured seed");
  app.add_option("--tol", tol, "override the tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--depth", depth, "comma-separated truncation depths, or auto");
  app.add_option("--threads", threads, "worker threads (0: all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--no-timing", no_timing, "write runtime_ms as 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  dilationlab::ExperimentConfig config;
  try {
    config = dilationlab::interpret(dilationlab::load_config(config_path));
  } catch (const std::exception& ex) {
    return config_error({{"config", ex.what()}});
  }
  if (config.experiment.empty()) {
    config.experiment = experiment;
  } else if (config.experiment != experiment) {
    config.parse_diagnostics.push_back(
        {"experiment", "config names '" + config.experiment +
                           "' but the command line asks for '" + experiment + "'"});
  }
  if (seed) config.seed = seed;
  if (tol) config.tol = tol;
  if (!depth.empty()) {
    config.depths.clear();
    config.auto_depth = false;
    if (depth == "auto") {
      config.auto_depth = true;
    } else {
      try {
        config.depths = dilationlab::parse_int_list(depth);
      } catch (const std::exception& ex) {
        return config_error({{"--depth", ex.what()}});
      }
    }
  }

  auto diags = dilationlab::validate(config);
  if (!diags.empty()) return config_error(diags);

  dilationlab::Report report;
  try {
    report = dilationlab::run(config, out_dir, {!no_timing, threads});
  } catch (const dilationlab::PreconditionError& ex) {
    return config_error({{"family", ex.what()}});
  } catch (const std::exception& ex) {
    std::cerr << "numerical failure: " << ex.what() << '\n';
    return kExitFailure;
  }

  std::printf("%s: %zu rows, max residual %.3e, tolerance %.1e: %s\n",
              report.experiment.c_str(), report.rows.size(), report.max_residual,
              report.tol, report.pass ? "pass" : "FAIL");
  if (report.pass) return 0;
  for (const auto& r : report.rows) {
    if (r.pass) continue;
    std::fprintf(stderr, "failing cell %d:", r.cell);
    for (const auto& f : r.fields) std::fprintf(stderr, " %s", f.c_str());
    std::fprintf(stderr, " residual %.3e%s%s\n", r.residual,
                 r.note.empty() ? "" : " ", r.note.c_str());
  }
  return kExitFailure;
}
