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

#ifndef XAIMAT_TOOLS_CLI_COMMANDS_H_
#define XAIMAT_TOOLS_CLI_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace xaimat::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitSingularSpectrum = 3;
inline constexpr int kExitTooManyPlayers = 4;

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json report;  // null on failure
  std::string error;
};

struct DistillArgs {
  std::string input;
  std::string output;
  std::optional<double> lambda;  // absent: exact division
  std::optional<std::string> block;  // "RxC"
  std::optional<std::size_t> top_k;
  std::size_t workers = 1;
};

struct ShapleyArgs {
  std::string model;
  std::string input;
  std::optional<std::string> baseline;
  std::string form = "subset";
  std::size_t workers = 1;
};

struct IgArgs {
  std::string model;
  std::string input;
  std::optional<std::string> baseline;
  std::string method = "trapezoid";
  std::size_t steps = 50;
  std::size_t degree = 8;
};

struct BenchArgs {
  std::vector<std::string> grid;  // "sizes=...", "workers=...", "repeats=..."
  std::string op = "dft2d";
  std::uint64_t seed = 42;
  std::optional<std::string> csv;
};

CommandResult cmd_distill(const DistillArgs& args);
CommandResult cmd_shapley(const ShapleyArgs& args);
CommandResult cmd_ig(const IgArgs& args);
// Writes the CSV table to args.csv when given.
CommandResult cmd_bench(const BenchArgs& args);

struct BenchGrid {
  std::vector<std::size_t> sizes{256, 512, 1024};
  std::vector<std::size_t> worker_counts{1, 2, 4, 8};
  std::size_t repeats = 5;
};

// Parses "key=v1,v2" tokens; throws ParseError. repeats must be >= 3.
BenchGrid parse_bench_grid(const std::vector<std::string>& tokens);

// Hex SHA-256 of the concatenated file contents.
std::string digest_files(const std::vector<std::string>& paths);

// Default worker count: XAI_WORKERS when set and valid, else 1.
std::size_t default_workers();

}  // namespace xaimat::cli

#endif  // XAIMAT_TOOLS_CLI_COMMANDS_H_
