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

// Regenerates the sample inputs under fixtures/ from fixed seeds.
//
//   xaimat_fixtures <output-dir>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "xaimat/csv_io.h"
#include "xaimat/models.h"

namespace fs = std::filesystem;
using namespace xaimat;

namespace {

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

void write_attribution_set(const fs::path& dir, const std::string& name,
                           ModelKind kind, std::uint64_t seed, Shape shape) {
  const AttributionFixture f = synth_attribution_fixture(kind, seed, shape);
  write_json(dir / (name + ".json"), model_to_json(f.model));
  write_matrix_csv((dir / (name + "_x.csv")).string(),
                   RealMatrix(shape.rows, shape.cols, f.x));
  write_matrix_csv((dir / (name + "_baseline.csv")).string(),
                   RealMatrix(shape.rows, shape.cols, f.baseline));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: xaimat_fixtures <output-dir>\n";
    return 2;
  }
  const fs::path root(argv[1]);
  const fs::path distill = root / "distill";
  const fs::path models = root / "models";
  fs::create_directories(distill);
  fs::create_directories(models);

  // Delta input: the fitted kernel is the output itself.
  RealMatrix delta(8, 8);
  delta(0, 0) = 1.0;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  RealMatrix y(8, 8);
  for (double& v : y.data()) v = dist(rng);
  write_matrix_csv((distill / "delta_X.csv").string(), delta);
  write_matrix_csv((distill / "delta_Y.csv").string(), y);

  const DistillFixture synth = synth_distill_fixture(7, {16, 16});
  write_matrix_csv((distill / "synth_X.csv").string(), synth.x);
  write_matrix_csv((distill / "synth_Y.csv").string(), synth.y);
  write_matrix_csv((distill / "synth_K.csv").string(), synth.kernel_true);

  // A constant input has a vanishing spectrum away from the origin.
  write_matrix_csv((distill / "flat_X.csv").string(), RealMatrix(4, 4, 1.0));
  write_matrix_csv((distill / "flat_Y.csv").string(), RealMatrix(4, 4, 2.0));

  write_attribution_set(models, "linear", ModelKind::kLinear, 11, {1, 6});
  write_attribution_set(models, "logistic", ModelKind::kLogistic, 12, {1, 5});
  write_attribution_set(models, "polynomial", ModelKind::kPolynomial, 13, {1, 4});
  write_attribution_set(models, "conv2d", ModelKind::kConv2dScore, 14, {3, 4});
  write_attribution_set(models, "wide", ModelKind::kLinear, 15, {3, 7});
  return 0;
}
