// Copyright 2026 The bellkit Authors
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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bellkit/cli.hpp"

namespace {

// Writes the report to stdout or, when out_path is set, to that file; the
// file-write failure class maps to exit code 1 like any other config error.
int emit_report(const bellkit::CommandOutcome& outcome,
                const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << outcome.report << "\n";
    return outcome.exit_code;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write report: " << out_path << "\n";
    return 1;
  }
  out << outcome.report << "\n";
  out.flush();
  if (!out) {
    std::cerr << "error: failed while writing report: " << out_path << "\n";
    return 1;
  }
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CHSH analysis of bipartite pure states"};
  app.require_subcommand(1);

  std::string state_path;
  std::string out_path;
  double rank_tol = bellkit::kDefaultTol.rank;
  bool verify_dense = false;
  CLI::App* analyze = app.add_subcommand(
      "analyze",
      "Schmidt-decompose a state, build violating settings, report S");
  analyze->add_option("state", state_path, "state JSON file")->required();
  analyze->add_option("--rank-tol", rank_tol,
                      "Schmidt coefficients at or below this count as zero");
  analyze->add_flag("--verify-dense", verify_dense,
                    "cross-check correlations against the dense-matrix route");
  analyze->add_option("--out", out_path,
                      "write the report here instead of stdout");

  int restarts = 16;
  std::uint64_t opt_seed = 0;
  double opt_tol = 1e-9;
  CLI::App* optimize = app.add_subcommand(
      "optimize", "numerically maximize S over measurement quadruples");
  optimize->add_option("state", state_path, "state JSON file")->required();
  optimize->add_option("--restarts", restarts, "multistart count");
  optimize->add_option("--seed", opt_seed, "master seed for restart points");
  optimize->add_option("--tol", opt_tol, "simplex convergence tolerance");

  std::string slice;
  std::size_t resolution = 0;
  std::string csv_path;
  CLI::App* sweep =
      app.add_subcommand("sweep", "evaluate S on an angle-slice lattice");
  sweep->add_option("state", state_path, "state JSON file")->required();
  sweep
      ->add_option("--slice", slice,
                   "one of gisin_phi0, meridian, equatorial, full")
      ->required();
  sweep->add_option("--resolution", resolution, "lattice points per axis")
      ->required();
  sweep->add_option("--out", csv_path, "output CSV path")->required();

  long long n_per_pair = 100000;
  std::uint64_t sample_seed = 0;
  CLI::App* sample = app.add_subcommand(
      "sample", "draw seeded Born-rule outcomes and estimate S");
  sample->add_option("state", state_path, "state JSON file")->required();
  sample->add_option("--n", n_per_pair, "trials per setting pair");
  sample->add_option("--seed", sample_seed, "master sampling seed");

  CLI::App* lhv = app.add_subcommand(
      "lhv", "print the deterministic local-strategy table and bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed())
      return emit_report(bellkit::run_analyze(state_path, rank_tol, verify_dense),
                         out_path);
    if (optimize->parsed()) {
      bellkit::OptimizerConfig config;
      config.restarts = restarts;
      config.seed = opt_seed;
      config.tol = opt_tol;
      return emit_report(bellkit::run_optimize(state_path, config),
                         std::string());
    }
    if (sweep->parsed())
      return bellkit::run_sweep(state_path, slice, resolution, csv_path)
          .exit_code;
    if (sample->parsed())
      return emit_report(bellkit::run_sample(state_path, n_per_pair, sample_seed),
                         std::string());
    if (lhv->parsed()) {
      std::cout << bellkit::lhv_table_text();
      return 0;
    }
  } catch (const bellkit::NotEntangledError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bellkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
