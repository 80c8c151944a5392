// Copyright 2026 The xaimat Authors.
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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.h"

namespace {

using xaimat::cli::CommandResult;

int emit(const CommandResult& result, const std::optional<std::string>& path) {
  if (result.exit_code != xaimat::cli::kExitOk) {
    std::cerr << "error: " << result.error << "\n";
    return result.exit_code;
  }
  const std::string text = result.report.dump(2) + "\n";
  if (!path) {
    std::cout << text;
    return xaimat::cli::kExitOk;
  }
  std::ofstream out(*path);
  if (!out) {
    std::cerr << "error: cannot write report '" << *path << "'\n";
    return xaimat::cli::kExitInputError;
  }
  out << text;
  return xaimat::cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix-form explainable-AI kernels and benchmarks"};
  app.require_subcommand(1);
  std::optional<std::string> report_path;
  std::size_t workers = xaimat::cli::default_workers();

  xaimat::cli::DistillArgs distill;
  auto* distill_cmd =
      app.add_subcommand("distill", "Fit a convolutional surrogate and score input blocks");
  distill_cmd->add_option("--input", distill.input, "Input matrix X (CSV)")->required();
  distill_cmd->add_option("--output", distill.output, "Output matrix Y (CSV)")->required();
  distill_cmd->add_option("--lambda", distill.lambda, "Spectral regularization (default 0, exact)");
  distill_cmd->add_option("--block", distill.block, "Block size RxC for contribution scores");
  distill_cmd->add_option("--top-k", distill.top_k, "Number of ranked blocks to report");
  distill_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  distill_cmd->add_option("--report", report_path, "Write the JSON report here");

  xaimat::cli::ShapleyArgs shapley;
  auto* shapley_cmd = app.add_subcommand("shapley", "Exact Shapley values of a model");
  shapley_cmd->add_option("--model", shapley.model, "Model parameter file (JSON)")->required();
  shapley_cmd->add_option("--input", shapley.input, "Feature vector (CSV)")->required();
  shapley_cmd->add_option("--baseline", shapley.baseline, "Baseline vector (CSV, default zeros)");
  shapley_cmd->add_option("--form", shapley.form, "permutation | subset | matrix")
      ->check(CLI::IsMember({"permutation", "subset", "matrix"}));
  shapley_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  shapley_cmd->add_option("--report", report_path, "Write the JSON report here");

  xaimat::cli::IgArgs ig;
  auto* ig_cmd = app.add_subcommand("ig", "Integrated gradients of a model");
  ig_cmd->add_option("--model", ig.model, "Model parameter file (JSON)")->required();
  ig_cmd->add_option("--input", ig.input, "Feature vector (CSV)")->required();
  ig_cmd->add_option("--baseline", ig.baseline, "Baseline vector (CSV, default zeros)");
  ig_cmd->add_option("--method", ig.method, "trapezoid | vandermonde")
      ->check(CLI::IsMember({"trapezoid", "vandermonde"}));
  auto* steps = ig_cmd->add_option("--steps", ig.steps, "Trapezoid panels")
                    ->check(CLI::PositiveNumber);
  auto* degree = ig_cmd->add_option("--degree", ig.degree, "Interpolation degree (<= 31)")
                     ->check(CLI::PositiveNumber);
  steps->excludes(degree);
  ig_cmd->add_option("--report", report_path, "Write the JSON report here");

  xaimat::cli::BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time decomposed execution across worker counts");
  bench_cmd->add_option("--grid", bench.grid, "sizes=a,b workers=a,b repeats=n")
      ->expected(1, -1);
  bench_cmd->add_option("--op", bench.op, "dft2d | distill | shapley-matrix")
      ->check(CLI::IsMember({"dft2d", "distill", "shapley-matrix"}));
  bench_cmd->add_option("--seed", bench.seed, "Workload seed");
  bench_cmd->add_option("--csv", bench.csv, "Write the CSV table here");
  bench_cmd->add_option("--report", report_path, "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return xaimat::cli::kExitInputError;
  }

  if (*distill_cmd) {
    distill.workers = workers;
    return emit(xaimat::cli::cmd_distill(distill), report_path);
  }
  if (*shapley_cmd) {
    shapley.workers = workers;
    return emit(xaimat::cli::cmd_shapley(shapley), report_path);
  }
  if (*ig_cmd) return emit(xaimat::cli::cmd_ig(ig), report_path);
  return emit(xaimat::cli::cmd_bench(bench), report_path);
}
