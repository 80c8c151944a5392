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

#ifndef XAIMAT_MODELS_H_
#define XAIMAT_MODELS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "xaimat/matrix.h"

namespace xaimat {

using Features = std::vector<double>;

enum class ModelKind { kLinear, kLogistic, kPolynomial, kConv2dScore };

const char* to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

// F(z) = w . z + b
struct LinearParams {
  std::vector<double> weights;
  double bias = 0.0;
};

// F(z) = sigmoid(w . z + b), range (0, 1).
struct LogisticParams {
  std::vector<double> weights;
  double bias = 0.0;
};

// Separable polynomial F(z) = sum_i sum_p coefficients[i][p] * z_i^p.
struct PolynomialParams {
  std::vector<std::vector<double>> coefficients;
};

// Single conv layer scorer over an input_rows x input_cols image z:
//   h[i][j] = bias + sum_{p,q} kernel[p][q] * z[i+p][j+q]   (valid correlation)
//   F(z)    = sum_{i,j} readout[i][j] * tanh(h[i][j])
struct Conv2dScoreParams {
  std::size_t input_rows = 0;
  std::size_t input_cols = 0;
  std::size_t kernel_rows = 0;
  std::size_t kernel_cols = 0;
  std::vector<double> kernel;   // kernel_rows * kernel_cols, row-major
  double bias = 0.0;
  std::vector<double> readout;  // output_rows * output_cols, row-major

  std::size_t output_rows() const { return input_rows - kernel_rows + 1; }
  std::size_t output_cols() const { return input_cols - kernel_cols + 1; }
};

// Scalar-output model with an exact analytic gradient. Immutable; evaluate
// and gradient are reentrant.
class DifferentiableModel {
 public:
  using Params = std::variant<LinearParams, LogisticParams, PolynomialParams,
                              Conv2dScoreParams>;

  // Validates parameter consistency; throws InvalidArgument.
  explicit DifferentiableModel(Params params);

  ModelKind kind() const;
  std::size_t arity() const { return arity_; }
  const Params& params() const { return params_; }

  // Throws ShapeError on arity mismatch.
  double evaluate(std::span<const double> z) const;
  Features gradient(std::span<const double> z) const;

 private:
  void check_arity(std::span<const double> z) const;

  Params params_;
  std::size_t arity_ = 0;
};

// JSON parameter files: {"kind": "...", ...flat weight arrays}. See README.
DifferentiableModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const DifferentiableModel& model);
DifferentiableModel load_model(const std::string& path);

// Seeded fixtures.

struct DistillFixture {
  RealMatrix x;
  RealMatrix kernel_true;
  RealMatrix y;             // circconv(x, kernel_true)
  double min_spectrum = 0;  // min |F(x)| under the unitary DFT
};

inline constexpr double kFixtureSpectrumFloor = 0.1;

// Draws x by rejection until min |F(x)| >= kFixtureSpectrumFloor.
DistillFixture synth_distill_fixture(std::uint64_t seed, Shape shape);

struct AttributionFixture {
  DifferentiableModel model;
  Features x;
  Features baseline;
  // Closed-form attributions, present when derivable (linear kind: both
  // Shapley and IG equal w_i * (x_i - baseline_i)).
  std::optional<Features> expected_shapley;
  std::optional<Features> expected_ig;
};

// `shape` is (1, n) for vector models; conv2d-score uses it as the image
// shape. Baseline is all zeros.
AttributionFixture synth_attribution_fixture(ModelKind kind,
                                             std::uint64_t seed, Shape shape);

}  // namespace xaimat

#endif  // XAIMAT_MODELS_H_
