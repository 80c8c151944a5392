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

#include "xaimat/models.h"

#include <cmath>
#include <fstream>
#include <random>
#include <string>

#include "xaimat/distill.h"
#include "xaimat/fourier.h"

namespace xaimat {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// Pre-activations h of the conv scorer (valid correlation plus bias).
std::vector<double> conv_preactivation(const Conv2dScoreParams& p,
                                       std::span<const double> z) {
  const std::size_t out_rows = p.output_rows();
  const std::size_t out_cols = p.output_cols();
  std::vector<double> h(out_rows * out_cols, p.bias);
  for (std::size_t i = 0; i < out_rows; ++i) {
    for (std::size_t j = 0; j < out_cols; ++j) {
      double acc = p.bias;
      for (std::size_t a = 0; a < p.kernel_rows; ++a) {
        for (std::size_t b = 0; b < p.kernel_cols; ++b) {
          acc += p.kernel[a * p.kernel_cols + b] *
                 z[(i + a) * p.input_cols + (j + b)];
        }
      }
      h[i * out_cols + j] = acc;
    }
  }
  return h;
}

std::size_t validate(const DifferentiableModel::Params& params) {
  return std::visit(
      Overloaded{
          [](const LinearParams& p) -> std::size_t {
            if (p.weights.empty()) throw InvalidArgument("linear model: no weights");
            return p.weights.size();
          },
          [](const LogisticParams& p) -> std::size_t {
            if (p.weights.empty()) throw InvalidArgument("logistic model: no weights");
            return p.weights.size();
          },
          [](const PolynomialParams& p) -> std::size_t {
            if (p.coefficients.empty()) {
              throw InvalidArgument("polynomial model: no features");
            }
            return p.coefficients.size();
          },
          [](const Conv2dScoreParams& p) -> std::size_t {
            if (p.input_rows == 0 || p.input_cols == 0 || p.kernel_rows == 0 ||
                p.kernel_cols == 0 || p.kernel_rows > p.input_rows ||
                p.kernel_cols > p.input_cols) {
              throw InvalidArgument(
                  "conv2d-score model: kernel must be non-empty and fit "
                  "inside the input");
            }
            if (p.kernel.size() != p.kernel_rows * p.kernel_cols) {
              throw InvalidArgument("conv2d-score model: kernel length mismatch");
            }
            if (p.readout.size() != p.output_rows() * p.output_cols()) {
              throw InvalidArgument("conv2d-score model: readout length mismatch");
            }
            return p.input_rows * p.input_cols;
          },
      },
      params);
}

std::vector<double> uniform_vector(std::mt19937_64& rng, std::size_t n,
                                   double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& e : v) e = dist(rng);
  return v;
}

RealMatrix uniform_matrix(std::mt19937_64& rng, Shape shape, double lo,
                          double hi) {
  return RealMatrix(shape.rows, shape.cols,
                    uniform_vector(rng, shape.rows * shape.cols, lo, hi));
}

template <typename T>
T require_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) {
    throw ParseError(std::string("model file: missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file: bad field '") + key + "': " +
                     e.what());
  }
}

}  // namespace

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLinear:
      return "linear";
    case ModelKind::kLogistic:
      return "logistic";
    case ModelKind::kPolynomial:
      return "polynomial";
    case ModelKind::kConv2dScore:
      return "conv2d-score";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "linear") return ModelKind::kLinear;
  if (name == "logistic") return ModelKind::kLogistic;
  if (name == "polynomial") return ModelKind::kPolynomial;
  if (name == "conv2d-score") return ModelKind::kConv2dScore;
  throw ParseError("unknown model kind '" + std::string(name) + "'");
}

DifferentiableModel::DifferentiableModel(Params params)
    : params_(std::move(params)), arity_(validate(params_)) {}

ModelKind DifferentiableModel::kind() const {
  return static_cast<ModelKind>(params_.index());
}

void DifferentiableModel::check_arity(std::span<const double> z) const {
  if (z.size() != arity_) {
    throw ShapeError(std::string(to_string(kind())) + " model expects " +
                     std::to_string(arity_) + " features, got " +
                     std::to_string(z.size()));
  }
}

double DifferentiableModel::evaluate(std::span<const double> z) const {
  check_arity(z);
  return std::visit(
      Overloaded{
          [&](const LinearParams& p) { return dot(p.weights, z) + p.bias; },
          [&](const LogisticParams& p) {
            return sigmoid(dot(p.weights, z) + p.bias);
          },
          [&](const PolynomialParams& p) {
            double acc = 0.0;
            for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
              double term = 0.0;
              const auto& c = p.coefficients[i];
              for (std::size_t k = c.size(); k-- > 0;) term = term * z[i] + c[k];
              acc += term;
            }
            return acc;
          },
          [&](const Conv2dScoreParams& p) {
            const std::vector<double> h = conv_preactivation(p, z);
            double acc = 0.0;
            for (std::size_t e = 0; e < h.size(); ++e) {
              acc += p.readout[e] * std::tanh(h[e]);
            }
            return acc;
          },
      },
      params_);
}

Features DifferentiableModel::gradient(std::span<const double> z) const {
  check_arity(z);
  return std::visit(
      Overloaded{
          [&](const LinearParams& p) { return p.weights; },
          [&](const LogisticParams& p) {
            const double s = sigmoid(dot(p.weights, z) + p.bias);
            const double slope = s * (1.0 - s);
            Features g(p.weights.size());
            for (std::size_t i = 0; i < g.size(); ++i) g[i] = p.weights[i] * slope;
            return g;
          },
          [&](const PolynomialParams& p) {
            Features g(p.coefficients.size(), 0.0);
            for (std::size_t i = 0; i < g.size(); ++i) {
              const auto& c = p.coefficients[i];
              double d = 0.0;
              for (std::size_t k = c.size(); k-- > 1;) {
                d = d * z[i] + static_cast<double>(k) * c[k];
              }
              g[i] = d;
            }
            return g;
          },
          [&](const Conv2dScoreParams& p) {
            const std::vector<double> h = conv_preactivation(p, z);
            const std::size_t out_cols = p.output_cols();
            Features g(arity_, 0.0);
            for (std::size_t e = 0; e < h.size(); ++e) {
              const double t = std::tanh(h[e]);
              const double upstream = p.readout[e] * (1.0 - t * t);
              const std::size_t i = e / out_cols;
              const std::size_t j = e % out_cols;
              for (std::size_t a = 0; a < p.kernel_rows; ++a) {
                for (std::size_t b = 0; b < p.kernel_cols; ++b) {
                  g[(i + a) * p.input_cols + (j + b)] +=
                      upstream * p.kernel[a * p.kernel_cols + b];
                }
              }
            }
            return g;
          },
      },
      params_);
}

DifferentiableModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("model file: expected a JSON object");
  const ModelKind kind = parse_model_kind(require_field<std::string>(j, "kind"));
  const double bias = j.contains("bias") ? require_field<double>(j, "bias") : 0.0;
  switch (kind) {
    case ModelKind::kLinear:
      return DifferentiableModel(
          LinearParams{require_field<std::vector<double>>(j, "weights"), bias});
    case ModelKind::kLogistic:
      return DifferentiableModel(
          LogisticParams{require_field<std::vector<double>>(j, "weights"), bias});
    case ModelKind::kPolynomial:
      return DifferentiableModel(PolynomialParams{
          require_field<std::vector<std::vector<double>>>(j, "coefficients")});
    case ModelKind::kConv2dScore: {
      const auto input = require_field<std::vector<std::size_t>>(j, "input_shape");
      const auto kernel = require_field<std::vector<std::size_t>>(j, "kernel_shape");
      if (input.size() != 2 || kernel.size() != 2) {
        throw ParseError("model file: input_shape and kernel_shape need 2 entries");
      }
      Conv2dScoreParams p;
      p.input_rows = input[0];
      p.input_cols = input[1];
      p.kernel_rows = kernel[0];
      p.kernel_cols = kernel[1];
      p.kernel = require_field<std::vector<double>>(j, "kernel");
      p.bias = bias;
      p.readout = require_field<std::vector<double>>(j, "readout");
      return DifferentiableModel(std::move(p));
    }
  }
  throw ParseError("model file: unhandled kind");
}

nlohmann::json model_to_json(const DifferentiableModel& model) {
  nlohmann::json j;
  j["kind"] = to_string(model.kind());
  std::visit(Overloaded{
                 [&](const LinearParams& p) {
                   j["weights"] = p.weights;
                   j["bias"] = p.bias;
                 },
                 [&](const LogisticParams& p) {
                   j["weights"] = p.weights;
                   j["bias"] = p.bias;
                 },
                 [&](const PolynomialParams& p) {
                   j["coefficients"] = p.coefficients;
                 },
                 [&](const Conv2dScoreParams& p) {
                   j["input_shape"] = {p.input_rows, p.input_cols};
                   j["kernel_shape"] = {p.kernel_rows, p.kernel_cols};
                   j["kernel"] = p.kernel;
                   j["bias"] = p.bias;
                   j["readout"] = p.readout;
                 },
             },
             model.params());
  return j;
}

DifferentiableModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model file '" + path + "': " + e.what());
  }
  return model_from_json(j);
}

DistillFixture synth_distill_fixture(std::uint64_t seed, Shape shape) {
  std::mt19937_64 rng(seed);
  const RealMatrix kernel = uniform_matrix(rng, shape, -1.0, 1.0);
  // A spike of sqrt(MN) at the origin lifts every unitary spectral
  // coefficient by 1; rejection handles the rest.
  const double spike = std::sqrt(static_cast<double>(shape.rows * shape.cols));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    RealMatrix x = uniform_matrix(rng, shape, -1.0, 1.0);
    x(0, 0) += spike;
    const ComplexMatrix fx = dft2d_decomposed(to_complex(x), 1);
    double floor = std::abs(fx.data()[0]);
    for (const Complex& v : fx.data()) floor = std::min(floor, std::abs(v));
    if (floor < kFixtureSpectrumFloor) continue;
    RealMatrix y = shape.rows * shape.cols <= 4096 ? circconv(x, kernel)
                                                   : circconv_spectral(x, kernel, 1);
    return DistillFixture{std::move(x), kernel, std::move(y), floor};
  }
  throw Error("synth_distill_fixture: could not draw an input with a "
              "well-conditioned spectrum");
}

AttributionFixture synth_attribution_fixture(ModelKind kind,
                                             std::uint64_t seed, Shape shape) {
  std::mt19937_64 rng(seed);
  const std::size_t n = shape.rows * shape.cols;
  if (n == 0) throw InvalidArgument("synth_attribution_fixture: empty shape");

  auto make = [&](DifferentiableModel model) {
    Features x = uniform_vector(rng, n, -1.0, 1.0);
    return AttributionFixture{std::move(model), std::move(x), Features(n, 0.0),
                              std::nullopt, std::nullopt};
  };

  switch (kind) {
    case ModelKind::kLinear: {
      LinearParams p{uniform_vector(rng, n, -1.0, 1.0), 0.0};
      p.bias = uniform_vector(rng, 1, -0.5, 0.5)[0];
      AttributionFixture f = make(DifferentiableModel(p));
      Features expected(n);
      for (std::size_t i = 0; i < n; ++i) {
        expected[i] = p.weights[i] * (f.x[i] - f.baseline[i]);
      }
      f.expected_shapley = expected;
      f.expected_ig = expected;
      return f;
    }
    case ModelKind::kLogistic: {
      LogisticParams p{uniform_vector(rng, n, -1.0, 1.0),
                       uniform_vector(rng, 1, -0.5, 0.5)[0]};
      return make(DifferentiableModel(p));
    }
    case ModelKind::kPolynomial: {
      PolynomialParams p;
      for (std::size_t i = 0; i < n; ++i) {
        p.coefficients.push_back(uniform_vector(rng, 5, -1.0, 1.0));
      }
      const DifferentiableModel model(p);
      AttributionFixture f = make(model);
      // Separable: every feature's attribution is p_i(x_i) - p_i(baseline_i).
      Features expected(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& c = p.coefficients[i];
        auto eval = [&](double t) {
          double acc = 0.0;
          for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
          return acc;
        };
        expected[i] = eval(f.x[i]) - eval(f.baseline[i]);
      }
      f.expected_shapley = expected;
      f.expected_ig = expected;
      return f;
    }
    case ModelKind::kConv2dScore: {
      Conv2dScoreParams p;
      p.input_rows = shape.rows;
      p.input_cols = shape.cols;
      p.kernel_rows = std::min<std::size_t>(3, shape.rows);
      p.kernel_cols = std::min<std::size_t>(3, shape.cols);
      p.kernel = uniform_vector(rng, p.kernel_rows * p.kernel_cols, -1.0, 1.0);
      p.bias = uniform_vector(rng, 1, -0.5, 0.5)[0];
      p.readout = uniform_vector(rng, p.output_rows() * p.output_cols(), -1.0, 1.0);
      return make(DifferentiableModel(std::move(p)));
    }
  }
  throw InvalidArgument("synth_attribution_fixture: unknown kind");
}

}  // namespace xaimat
