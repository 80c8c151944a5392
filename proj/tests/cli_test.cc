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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli/commands.h"
#include "support/cli_runner.h"
#include "support/schema_check.h"
#include "xaimat/csv_io.h"
#include "xaimat/models.h"

namespace xaimat {
namespace {

using nlohmann::json;
using testing::fixture;
using testing::run_cli;

void expect_schema_valid(const json& report, const std::string& schema_name) {
  const json schema = testing::load_json(testing::kSchemas + "/" + schema_name);
  const auto errors = testing::validate(schema, report);
  EXPECT_TRUE(errors.empty()) << schema_name << ": " << errors.front();
}

std::vector<double> flat(const json& rows) {
  std::vector<double> out;
  for (const auto& row : rows) {
    for (const auto& v : row) out.push_back(v.get<double>());
  }
  return out;
}

TEST(CliDistillTest, DeltaInputReturnsOutputAsKernel) {
  const auto run = run_cli({"distill", "--input", fixture("distill/delta_X.csv"),
                            "--output", fixture("distill/delta_Y.csv")},
                           "distill_delta");
  ASSERT_EQ(run.exit_code, 0);
  expect_schema_valid(run.report, "distill_report.schema.json");
  const RealMatrix y = read_matrix_csv(fixture("distill/delta_Y.csv"));
  const std::vector<double> k = flat(run.report["attributions"]["kernel"]);
  ASSERT_EQ(k.size(), y.size());
  for (std::size_t i = 0; i < k.size(); ++i) EXPECT_NEAR(k[i], y.data()[i], 1e-9);
  EXPECT_EQ(run.report["diagnostics"]["lambda_used"].get<double>(), 0.0);
}

TEST(CliDistillTest, SyntheticFixtureFitsTightly) {
  const auto run = run_cli({"distill", "--input", fixture("distill/synth_X.csv"),
                            "--output", fixture("distill/synth_Y.csv"), "--block",
                            "4x8", "--top-k", "3", "--workers", "3"},
                           "distill_synth");
  ASSERT_EQ(run.exit_code, 0);
  expect_schema_valid(run.report, "distill_report.schema.json");
  EXPECT_LE(run.report["diagnostics"]["residual"].get<double>(), 1e-6);
  EXPECT_EQ(run.report["attributions"]["ranking"].size(), 3u);
  EXPECT_EQ(run.report["attributions"]["contributions"].size(), 4u);
  EXPECT_EQ(run.report["attributions"]["contributions"][0].size(), 2u);
  EXPECT_EQ(run.report["workers"].get<int>(), 3);
  const RealMatrix k_true = read_matrix_csv(fixture("distill/synth_K.csv"));
  const std::vector<double> k = flat(run.report["attributions"]["kernel"]);
  double err = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    err += (k[i] - k_true.data()[i]) * (k[i] - k_true.data()[i]);
  }
  EXPECT_LE(std::sqrt(err), 1e-6);
}

TEST(CliDistillTest, ErrorExitCodes) {
  EXPECT_EQ(run_cli({"distill", "--input", fixture("distill/missing.csv"), "--output",
                     fixture("distill/delta_Y.csv")},
                    "distill_missing")
                .exit_code,
            2);
  EXPECT_EQ(run_cli({"distill", "--input", fixture("distill/delta_X.csv"), "--output",
                     fixture("distill/synth_Y.csv")},
                    "distill_shape")
                .exit_code,
            2);
  EXPECT_EQ(run_cli({"distill", "--input", fixture("distill/delta_X.csv"), "--output",
                     fixture("distill/delta_Y.csv"), "--block", "3by3"},
                    "distill_block")
                .exit_code,
            2);
  EXPECT_EQ(run_cli({"distill", "--input", fixture("distill/flat_X.csv"), "--output",
                     fixture("distill/flat_Y.csv")},
                    "distill_flat")
                .exit_code,
            3);
  const auto regularized =
      run_cli({"distill", "--input", fixture("distill/flat_X.csv"), "--output",
               fixture("distill/flat_Y.csv"), "--lambda", "1e-3"},
              "distill_flat_lambda");
  EXPECT_EQ(regularized.exit_code, 0);
  EXPECT_EQ(regularized.report["diagnostics"]["lambda_used"].get<double>(), 1e-3);
  EXPECT_EQ(run_cli({"distill", "--input", fixture("distill/delta_X.csv")}, "distill_args")
                .exit_code,
            2);
}

TEST(CliShapleyTest, LinearModelGivesWeightTimesInput) {
  const auto run = run_cli({"shapley", "--model", fixture("models/linear.json"), "--input",
                            fixture("models/linear_x.csv")},
                           "shapley_linear");
  ASSERT_EQ(run.exit_code, 0);
  expect_schema_valid(run.report, "shapley_report.schema.json");
  const DifferentiableModel m = load_model(fixture("models/linear.json"));
  const auto& w = std::get<LinearParams>(m.params()).weights;
  const RealMatrix x = read_matrix_csv(fixture("models/linear_x.csv"));
  const auto phi = run.report["attributions"]["phi"].get<std::vector<double>>();
  ASSERT_EQ(phi.size(), w.size());
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(phi[i], w[i] * x.data()[i], 1e-9);
  EXPECT_EQ(run.report["attributions"]["form"], "subset");
}

TEST(CliShapleyTest, FormsAgree) {
  std::vector<std::vector<double>> results;
  for (const std::string form : {"subset", "matrix", "permutation"}) {
    const auto run = run_cli({"shapley", "--model", fixture("models/logistic.json"),
                              "--input", fixture("models/logistic_x.csv"), "--baseline",
                              fixture("models/logistic_baseline.csv"), "--form", form,
                              "--workers", "2"},
                             "shapley_" + form);
    ASSERT_EQ(run.exit_code, 0) << form;
    expect_schema_valid(run.report, "shapley_report.schema.json");
    EXPECT_LE(run.report["diagnostics"]["efficiency_gap"].get<double>(), 1e-9);
    results.push_back(run.report["attributions"]["phi"].get<std::vector<double>>());
  }
  for (std::size_t i = 0; i < results[0].size(); ++i) {
    EXPECT_NEAR(results[1][i], results[0][i], 1e-9);
    EXPECT_NEAR(results[2][i], results[0][i], 1e-9);
  }
}

TEST(CliShapleyTest, TooManyPlayers) {
  EXPECT_EQ(run_cli({"shapley", "--model", fixture("models/wide.json"), "--input",
                     fixture("models/wide_x.csv")},
                    "shapley_wide")
                .exit_code,
            4);
  EXPECT_EQ(run_cli({"shapley", "--model", fixture("models/linear.json"), "--input",
                     fixture("models/logistic_x.csv")},
                    "shapley_arity")
                .exit_code,
            2);
  EXPECT_EQ(run_cli({"shapley", "--model", fixture("models/linear.json"), "--input",
                     fixture("models/linear_x.csv"), "--form", "sampled"},
                    "shapley_form")
                .exit_code,
            2);
}

TEST(CliIgTest, LinearCompleteness) {
  const auto run = run_cli({"ig", "--model", fixture("models/linear.json"), "--input",
                            fixture("models/linear_x.csv")},
                           "ig_linear");
  ASSERT_EQ(run.exit_code, 0);
  expect_schema_valid(run.report, "ig_report.schema.json");
  EXPECT_LE(run.report["diagnostics"]["completeness_gap"].get<double>(), 1e-12);
  EXPECT_EQ(run.report["attributions"]["steps"].get<int>(), 50);
}

TEST(CliIgTest, MethodsAgreeOnLogistic) {
  const auto trap = run_cli({"ig", "--model", fixture("models/logistic.json"), "--input",
                             fixture("models/logistic_x.csv"), "--steps", "10000"},
                            "ig_trap");
  const auto vand = run_cli({"ig", "--model", fixture("models/logistic.json"), "--input",
                             fixture("models/logistic_x.csv"), "--method", "vandermonde",
                             "--degree", "10"},
                            "ig_vand");
  ASSERT_EQ(trap.exit_code, 0);
  ASSERT_EQ(vand.exit_code, 0);
  expect_schema_valid(vand.report, "ig_report.schema.json");
  const auto a = trap.report["attributions"]["attributions"].get<std::vector<double>>();
  const auto b = vand.report["attributions"]["attributions"].get<std::vector<double>>();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-5);
}

TEST(CliIgTest, InputEqualToBaselineGivesZeros) {
  const auto run = run_cli({"ig", "--model", fixture("models/conv2d.json"), "--input",
                            fixture("models/conv2d_x.csv"), "--baseline",
                            fixture("models/conv2d_x.csv")},
                           "ig_same");
  ASSERT_EQ(run.exit_code, 0);
  for (double v : run.report["attributions"]["attributions"].get<std::vector<double>>()) {
    EXPECT_EQ(v, 0.0);
  }
}

TEST(CliIgTest, Errors) {
  EXPECT_EQ(run_cli({"ig", "--model", fixture("models/linear.json"), "--input",
                     fixture("models/linear_x.csv"), "--steps", "5", "--degree", "4"},
                    "ig_both")
                .exit_code,
            2);
  EXPECT_EQ(run_cli({"ig", "--model", fixture("models/linear.json"), "--input",
                     fixture("models/linear_x.csv"), "--method", "vandermonde",
                     "--degree", "40"},
                    "ig_degree")
                .exit_code,
            2);
  EXPECT_EQ(run_cli({"ig", "--model", fixture("models/missing.json"), "--input",
                     fixture("models/linear_x.csv")},
                    "ig_missing")
                .exit_code,
            2);
}

TEST(CliBenchTest, SmallGridReportAndCsv) {
  const std::string csv_path =
      (std::filesystem::temp_directory_path() / "xaimat_bench_test.csv").string();
  const auto run = run_cli({"bench", "--grid", "sizes=8,12", "workers=3,2", "repeats=3",
                            "--op", "dft2d", "--csv", csv_path},
                           "bench_small");
  ASSERT_EQ(run.exit_code, 0);
  expect_schema_valid(run.report, "bench_report.schema.json");
  const json& cells = run.report["cells"];
  ASSERT_EQ(cells.size(), 6u);
  EXPECT_EQ(run.report["grid"]["workers"], json({1, 3, 2}));
  for (const auto& cell : cells) {
    EXPECT_TRUE(cell["correct"].get<bool>());
    EXPECT_EQ(cell["times_seconds"].size(), 3u);
    if (cell["workers"] == 1) {
      EXPECT_EQ(cell["speedup"].get<double>(), 1.0);
    }
  }
  std::ifstream in(csv_path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "op,size,workers,median_seconds,speedup,correct");
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) {
    EXPECT_EQ(line.rfind("dft2d,", 0), 0u);
    ++lines;
  }
  EXPECT_EQ(lines, 6u);
}

TEST(CliBenchTest, OtherWorkloads) {
  for (const auto& [op, sizes] : std::vector<std::pair<std::string, std::string>>{
           {"distill", "sizes=16"}, {"shapley-matrix", "sizes=6"}}) {
    const auto run = run_cli({"bench", "--grid", sizes, "workers=2", "repeats=3", "--op", op},
                             "bench_" + op);
    ASSERT_EQ(run.exit_code, 0) << op;
    expect_schema_valid(run.report, "bench_report.schema.json");
    for (const auto& cell : run.report["cells"]) EXPECT_TRUE(cell["correct"].get<bool>());
  }
}

TEST(CliBenchTest, ConfigErrors) {
  EXPECT_EQ(run_cli({"bench", "--grid", "repeats=2"}, "bench_repeats").exit_code, 2);
  EXPECT_EQ(run_cli({"bench", "--grid", "sizes=0"}, "bench_zero").exit_code, 2);
  EXPECT_EQ(run_cli({"bench", "--grid", "colours=3"}, "bench_key").exit_code, 2);
  EXPECT_EQ(run_cli({"bench", "--op", "fft"}, "bench_op").exit_code, 2);
  EXPECT_EQ(run_cli({"bench", "--op", "shapley-matrix", "--grid", "sizes=21"},
                    "bench_players")
                .exit_code,
            2);
}

TEST(CliProperty, RerunsReproducePayloads) {
  const std::vector<std::vector<std::string>> commands{
      {"distill", "--input", fixture("distill/synth_X.csv"), "--output",
       fixture("distill/synth_Y.csv"), "--workers", "4"},
      {"shapley", "--model", fixture("models/conv2d.json"), "--input",
       fixture("models/conv2d_x.csv"), "--form", "matrix", "--workers", "3"},
      {"ig", "--model", fixture("models/polynomial.json"), "--input",
       fixture("models/polynomial_x.csv"), "--method", "vandermonde"},
      {"bench", "--grid", "sizes=6", "workers=1,2", "repeats=3", "--seed", "9"},
  };
  for (std::size_t c = 0; c < commands.size(); ++c) {
    const auto a = run_cli(commands[c], "rerun_a" + std::to_string(c));
    const auto b = run_cli(commands[c], "rerun_b" + std::to_string(c));
    ASSERT_EQ(a.exit_code, 0) << commands[c][0];
    EXPECT_EQ(testing::stable_part(a.report).dump(), testing::stable_part(b.report).dump())
        << commands[c][0];
  }
}

TEST(CliUnitTest, ParseBenchGrid) {
  const cli::BenchGrid defaults = cli::parse_bench_grid({});
  EXPECT_EQ(defaults.sizes, (std::vector<std::size_t>{256, 512, 1024}));
  EXPECT_EQ(defaults.worker_counts, (std::vector<std::size_t>{1, 2, 4, 8}));
  EXPECT_EQ(defaults.repeats, 5u);
  const cli::BenchGrid g = cli::parse_bench_grid({"workers=4,1,2", "repeats=7"});
  EXPECT_EQ(g.worker_counts, (std::vector<std::size_t>{1, 4, 2}));
  EXPECT_EQ(g.repeats, 7u);
  EXPECT_THROW(cli::parse_bench_grid({"sizes=4,x"}), ParseError);
  EXPECT_THROW(cli::parse_bench_grid({"repeats=3,4"}), ParseError);
}

TEST(CliUnitTest, DigestIsSha256OfConcatenation) {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string a = (dir / "xaimat_digest_a.txt").string();
  const std::string b = (dir / "xaimat_digest_b.txt").string();
  std::ofstream(a) << "a";
  std::ofstream(b) << "bc";
  // SHA-256("abc").
  EXPECT_EQ(cli::digest_files({a, b}),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_THROW(cli::digest_files({(dir / "xaimat_no_such_file").string()}), ParseError);
}

TEST(CliUnitTest, DefaultWorkersFromEnvironment) {
  ::setenv("XAI_WORKERS", "6", 1);
  EXPECT_EQ(cli::default_workers(), 6u);
  ::setenv("XAI_WORKERS", "zero", 1);
  EXPECT_EQ(cli::default_workers(), 1u);
  ::unsetenv("XAI_WORKERS");
  EXPECT_EQ(cli::default_workers(), 1u);
}

TEST(CliUnitTest, WorkersFlagOverridesEnvironment) {
  ::setenv("XAI_WORKERS", "5", 1);
  const auto env_only = run_cli({"distill", "--input", fixture("distill/delta_X.csv"),
                                 "--output", fixture("distill/delta_Y.csv")},
                                "workers_env");
  const auto flagged = run_cli({"distill", "--input", fixture("distill/delta_X.csv"),
                                "--output", fixture("distill/delta_Y.csv"), "--workers", "2"},
                               "workers_flag");
  ::unsetenv("XAI_WORKERS");
  ASSERT_EQ(env_only.exit_code, 0);
  ASSERT_EQ(flagged.exit_code, 0);
  EXPECT_EQ(env_only.report["workers"].get<int>(), 5);
  EXPECT_EQ(flagged.report["workers"].get<int>(), 2);
}

}  // namespace
}  // namespace xaimat
