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

#include "cli/commands.h"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iterator>
#include <memory>
#include <random>
#include <sstream>
#include <thread>

#include "xaimat/csv_io.h"
#include "xaimat/distill.h"
#include "xaimat/fourier.h"
#include "xaimat/intgrad.h"
#include "xaimat/models.h"
#include "xaimat/shapley.h"

namespace xaimat::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json matrix_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return rows;
}

Features flatten(const RealMatrix& m) {
  return Features(m.data().begin(), m.data().end());
}

std::pair<std::size_t, std::size_t> parse_block(const std::string& text) {
  const auto x = text.find_first_of("xX");
  try {
    if (x == std::string::npos) throw ParseError("");
    std::size_t used_r = 0;
    std::size_t used_c = 0;
    const std::string rs = text.substr(0, x);
    const std::string cs = text.substr(x + 1);
    const unsigned long r = std::stoul(rs, &used_r);
    const unsigned long c = std::stoul(cs, &used_c);
    if (used_r != rs.size() || used_c != cs.size() || r == 0 || c == 0) {
      throw ParseError("");
    }
    return {r, c};
  } catch (const std::exception&) {
    throw ParseError("--block expects RxC with positive integers, got '" +
                     text + "'");
  }
}

std::vector<std::size_t> parse_counts(const std::string& key,
                                      const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v == 0) {
      throw ParseError("bench grid: bad value '" + item + "' for " + key);
    }
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("bench grid: empty list for " + key);
  return out;
}

Features load_features(const std::optional<std::string>& path, std::size_t n) {
  if (!path) return Features(n, 0.0);
  return flatten(read_matrix_csv(*path));
}

json report_skeleton(const char* method, const std::vector<std::string>& inputs,
                     std::size_t workers) {
  json report;
  report["method"] = method;
  report["input_digest"] = digest_files(inputs);
  report["workers"] = workers;
  return report;
}

// Error-to-exit-code mapping shared by the attribution commands.
template <typename F>
CommandResult guarded(F&& body, int size_limit_code) {
  CommandResult result;
  try {
    result.report = body();
  } catch (const SingularSpectrumError& e) {
    result.exit_code = kExitSingularSpectrum;
    result.error = e.what();
  } catch (const SizeLimitError& e) {
    result.exit_code = size_limit_code;
    result.error = e.what();
  } catch (const std::exception& e) {
    result.exit_code = kExitInputError;
    result.error = e.what();
  }
  return result;
}

// Bench workloads: run(workers) returns the flattened numeric output.
struct Workload {
  std::function<std::vector<double>(std::size_t)> run;
};

std::vector<double> complex_values(const ComplexMatrix& m) {
  std::vector<double> out;
  out.reserve(2 * m.size());
  for (const Complex& v : m.data()) {
    out.push_back(v.real());
    out.push_back(v.imag());
  }
  return out;
}

Workload make_workload(const std::string& op, std::size_t size,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed + size);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  if (op == "dft2d") {
    auto x = std::make_shared<ComplexMatrix>(size, size);
    for (Complex& v : x->data()) v = {dist(rng), dist(rng)};
    return {[x](std::size_t w) { return complex_values(dft2d_decomposed(*x, w)); }};
  }
  if (op == "distill") {
    auto x = std::make_shared<RealMatrix>(size, size);
    auto k = std::make_shared<RealMatrix>(size, size);
    for (double& v : x->data()) v = dist(rng);
    for (double& v : k->data()) v = dist(rng);
    (*x)(0, 0) += static_cast<double>(size);
    auto y = std::make_shared<RealMatrix>(circconv_spectral(*x, *k, 1));
    const std::size_t block = std::max<std::size_t>(1, size / 8);
    return {[x, y, block](std::size_t w) {
      const DistilledKernel kernel = fit_kernel(*x, *y, std::nullopt, w);
      const ContributionMap map = contribution_map(*x, *y, kernel, block, block, w);
      std::vector<double> out = flatten(kernel.kernel);
      out.insert(out.end(), map.per_feature.data().begin(),
                 map.per_feature.data().end());
      return out;
    }};
  }
  if (op == "shapley-matrix") {
    if (size > kMaxPlayers) {
      throw ParseError("bench: shapley-matrix sizes are player counts <= " +
                       std::to_string(kMaxPlayers));
    }
    std::vector<double> values(std::size_t{1} << size);
    for (double& v : values) v = dist(rng);
    auto game = std::make_shared<CoalitionGame>(size, std::move(values));
    return {[game](std::size_t w) { return shapley_matrix(*game, w).phi; }};
  }
  throw ParseError("bench: unknown --op '" + op +
                   "' (expected dft2d, distill or shapley-matrix)");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

json machine_metadata() {
  json m;
  m["hardware_concurrency"] = std::thread::hardware_concurrency();
#if defined(__clang__)
  m["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  m["compiler"] = std::string("gcc ") + __VERSION__;
#else
  m["compiler"] = "unknown";
#endif
#if defined(__linux__)
  m["os"] = "linux";
#elif defined(__APPLE__)
  m["os"] = "darwin";
#else
  m["os"] = "other";
#endif
  return m;
}

}  // namespace

std::string digest_files(const std::vector<std::string>& paths) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      EVP_MD_CTX_free(ctx);
      throw ParseError("cannot open '" + path + "'");
    }
    const std::string bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    EVP_DigestUpdate(ctx, bytes.data(), bytes.size());
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

std::size_t default_workers() {
  if (const char* env = std::getenv("XAI_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1;
}

CommandResult cmd_distill(const DistillArgs& args) {
  return guarded(
      [&] {
        const auto start = Clock::now();
        const RealMatrix x = read_matrix_csv(args.input);
        const RealMatrix y = read_matrix_csv(args.output);
        const auto [block_rows, block_cols] =
            args.block ? parse_block(*args.block)
                       : std::pair{std::max<std::size_t>(1, x.rows() / 4),
                                   std::max<std::size_t>(1, x.cols() / 4)};

        const DistilledKernel kernel =
            fit_kernel(x, y, args.lambda.value_or(0.0), args.workers);
        const ContributionMap map =
            contribution_map(x, y, kernel, block_rows, block_cols, args.workers);
        const auto ranking =
            rank_features(map, args.top_k.value_or(map.block_count()));

        json report = report_skeleton("distill", {args.input, args.output},
                                      args.workers);
        json ranked = json::array();
        for (const auto& r : ranking) {
          ranked.push_back({{"block_index", r.block_index},
                            {"block_row", r.block_index / map.per_feature.cols()},
                            {"block_col", r.block_index % map.per_feature.cols()},
                            {"score", r.score}});
        }
        report["attributions"] = {{"kernel", matrix_json(kernel.kernel)},
                                  {"block", {block_rows, block_cols}},
                                  {"contributions", matrix_json(map.per_feature)},
                                  {"ranking", ranked}};
        report["diagnostics"] = {{"residual", kernel.residual},
                                 {"lambda_used", kernel.lambda_used},
                                 {"imag_residue", kernel.imag_residue},
                                 {"fit_residual", map.fit_residual}};
        report["wall_time_seconds"] = seconds_since(start);
        return report;
      },
      kExitInputError);
}

CommandResult cmd_shapley(const ShapleyArgs& args) {
  return guarded(
      [&] {
        const auto start = Clock::now();
        const DifferentiableModel model = load_model(args.model);
        const Features x = flatten(read_matrix_csv(args.input));
        const Features baseline = load_features(args.baseline, x.size());
        if (x.size() > kMaxPlayers) {
          throw SizeLimitError(std::to_string(x.size()) +
                               " features exceeds the cap of " +
                               std::to_string(kMaxPlayers) + " players");
        }
        const CoalitionGame game =
            game_from_model(model, x, baseline, args.workers);

        ShapleyVector phi;
        if (args.form == "permutation") {
          phi = shapley_permutation(game);
        } else if (args.form == "subset") {
          phi = shapley_subset(game);
        } else if (args.form == "matrix") {
          phi = shapley_matrix(game, args.workers);
        } else {
          throw ParseError("--form must be permutation, subset or matrix");
        }

        std::vector<std::string> inputs{args.model, args.input};
        if (args.baseline) inputs.push_back(*args.baseline);
        json report = report_skeleton("shapley", inputs, args.workers);
        report["attributions"] = {{"phi", phi.phi}, {"form", args.form}};
        report["diagnostics"] = {{"efficiency_gap", phi.efficiency_gap},
                                 {"n_players", game.n_players()},
                                 {"v_empty", game.value(0)},
                                 {"v_full", game.grand_value()}};
        report["wall_time_seconds"] = seconds_since(start);
        return report;
      },
      kExitTooManyPlayers);
}

CommandResult cmd_ig(const IgArgs& args) {
  return guarded(
      [&] {
        const auto start = Clock::now();
        const DifferentiableModel model = load_model(args.model);
        const Features x = flatten(read_matrix_csv(args.input));
        const Features baseline = load_features(args.baseline, x.size());

        IgConfig config;
        config.steps = args.steps;
        config.poly_degree = args.degree;
        if (args.method == "trapezoid") {
          config.method = IgMethod::kTrapezoid;
        } else if (args.method == "vandermonde") {
          config.method = IgMethod::kVandermonde;
        } else {
          throw ParseError("--method must be trapezoid or vandermonde");
        }
        const IgAttribution attr = integrated_gradients(model, x, baseline, config);

        std::vector<std::string> inputs{args.model, args.input};
        if (args.baseline) inputs.push_back(*args.baseline);
        json report = report_skeleton("ig", inputs, 1);
        json payload = {{"attributions", attr.per_feature},
                        {"method", args.method}};
        if (config.method == IgMethod::kTrapezoid) {
          payload["steps"] = config.steps;
        } else {
          payload["degree"] = config.poly_degree;
        }
        report["attributions"] = payload;
        report["diagnostics"] = {
            {"completeness_gap", attr.completeness_gap},
            {"output_delta", model.evaluate(x) - model.evaluate(baseline)}};
        report["wall_time_seconds"] = seconds_since(start);
        return report;
      },
      kExitInputError);
}

BenchGrid parse_bench_grid(const std::vector<std::string>& tokens) {
  BenchGrid grid;
  for (const auto& token : tokens) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      throw ParseError("bench grid: expected key=value, got '" + token + "'");
    }
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "sizes") {
      grid.sizes = parse_counts(key, value);
    } else if (key == "workers") {
      grid.worker_counts = parse_counts(key, value);
    } else if (key == "repeats") {
      const auto r = parse_counts(key, value);
      if (r.size() != 1) throw ParseError("bench grid: repeats takes one value");
      grid.repeats = r[0];
    } else {
      throw ParseError("bench grid: unknown key '" + key + "'");
    }
  }
  if (grid.repeats < 3) {
    throw ParseError("bench grid: repeats must be >= 3 (median is reported)");
  }
  // The single-worker row anchors the speedup column.
  if (std::find(grid.worker_counts.begin(), grid.worker_counts.end(), 1) ==
      grid.worker_counts.end()) {
    grid.worker_counts.insert(grid.worker_counts.begin(), 1);
  }
  std::stable_partition(grid.worker_counts.begin(), grid.worker_counts.end(),
                        [](std::size_t w) { return w == 1; });
  return grid;
}

CommandResult cmd_bench(const BenchArgs& args) {
  return guarded(
      [&] {
        const BenchGrid grid = parse_bench_grid(args.grid);
        json cells = json::array();
        std::ostringstream csv;
        csv << "op,size,workers,median_seconds,speedup,correct\n";

        for (std::size_t size : grid.sizes) {
          const Workload work = make_workload(args.op, size, args.seed);
          std::vector<double> reference;
          double reference_median = 0.0;
          for (std::size_t workers : grid.worker_counts) {
            std::vector<double> times;
            bool correct = true;
            for (std::size_t rep = 0; rep < grid.repeats; ++rep) {
              const auto start = Clock::now();
              std::vector<double> out = work.run(workers);
              times.push_back(seconds_since(start));
              if (reference.empty()) reference = std::move(out);
              else correct = correct && out == reference;
            }
            const double med = median(times);
            if (workers == 1) reference_median = med;
            const double speedup = workers == 1 ? 1.0 : reference_median / med;
            cells.push_back({{"size", size},
                             {"workers", workers},
                             {"median_seconds", med},
                             {"times_seconds", times},
                             {"speedup", speedup},
                             {"correct", correct}});
            csv << args.op << ',' << size << ',' << workers << ',' << med << ','
                << speedup << ',' << (correct ? "true" : "false") << '\n';
          }
        }

        json report;
        report["op"] = args.op;
        report["seed"] = args.seed;
        report["grid"] = {{"sizes", grid.sizes},
                          {"workers", grid.worker_counts},
                          {"repeats", grid.repeats}};
        report["machine"] = machine_metadata();
        report["cells"] = cells;
        if (args.csv) {
          std::ofstream out(*args.csv);
          if (!out) throw ParseError("cannot write '" + *args.csv + "'");
          out << csv.str();
        }
        return report;
      },
      kExitInputError);
}

}  // namespace xaimat::cli
