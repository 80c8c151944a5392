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

#include "xaimat/intgrad.h"

#include <cmath>
#include <string>
#include <vector>

#include "xaimat/linalg.h"

namespace xaimat {
namespace {

void check_inputs(const DifferentiableModel& model, std::span<const double> x,
                  std::span<const double> baseline) {
  if (x.size() != model.arity() || baseline.size() != model.arity()) {
    throw ShapeError("integrated gradients: model arity " +
                     std::to_string(model.arity()) + ", input " +
                     std::to_string(x.size()) + ", baseline " +
                     std::to_string(baseline.size()));
  }
}

// Gradient rows at baseline + alpha * (x - baseline) for each alpha.
std::vector<Features> path_gradients(const DifferentiableModel& model,
                                     std::span<const double> x,
                                     std::span<const double> baseline,
                                     std::span<const double> alphas) {
  std::vector<Features> grads;
  grads.reserve(alphas.size());
  Features z(x.size());
  for (double alpha : alphas) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      z[i] = baseline[i] + alpha * (x[i] - baseline[i]);
    }
    try {
      grads.push_back(model.gradient(z));
    } catch (const std::exception& e) {
      throw Error("gradient evaluation failed at alpha=" + std::to_string(alpha) +
                  ": " + e.what());
    }
  }
  return grads;
}

double output_delta(const DifferentiableModel& model, std::span<const double> x,
                    std::span<const double> baseline) {
  return model.evaluate(x) - model.evaluate(baseline);
}

IgAttribution make_attribution(const DifferentiableModel& model,
                               std::span<const double> x,
                               std::span<const double> baseline,
                               const Features& path_integral) {
  IgAttribution attr;
  attr.baseline.assign(baseline.begin(), baseline.end());
  attr.per_feature.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    attr.per_feature[i] = (x[i] - baseline[i]) * path_integral[i];
  }
  check_completeness(attr, model, x);
  return attr;
}

}  // namespace

const char* to_string(IgMethod method) {
  return method == IgMethod::kTrapezoid ? "trapezoid" : "vandermonde";
}

IgAttribution ig_trapezoid(const DifferentiableModel& model,
                           std::span<const double> x,
                           std::span<const double> baseline,
                           std::size_t steps) {
  check_inputs(model, x, baseline);
  if (steps == 0) throw InvalidArgument("ig_trapezoid: steps must be >= 1");

  std::vector<double> alphas(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    alphas[k] = static_cast<double>(k) / static_cast<double>(steps);
  }
  const std::vector<Features> grads = path_gradients(model, x, baseline, alphas);

  Features integral(x.size(), 0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      integral[i] += (grads[k - 1][i] + grads[k][i]) / 2.0;
    }
  }
  for (double& v : integral) v /= static_cast<double>(steps);
  return make_attribution(model, x, baseline, integral);
}

IgAttribution ig_vandermonde(const DifferentiableModel& model,
                             std::span<const double> x,
                             std::span<const double> baseline,
                             std::size_t degree) {
  check_inputs(model, x, baseline);
  if (degree == 0) throw InvalidArgument("ig_vandermonde: degree must be >= 1");
  if (degree + 1 > kMaxVandermondePoints) {
    throw SizeLimitError("ig_vandermonde: degree " + std::to_string(degree) +
                         " exceeds the limit of " +
                         std::to_string(kMaxVandermondePoints - 1));
  }

  std::vector<double> nodes(degree + 1);
  for (std::size_t j = 0; j <= degree; ++j) {
    nodes[j] = static_cast<double>(j) / static_cast<double>(degree);
  }
  const std::vector<Features> grads = path_gradients(model, x, baseline, nodes);
  const VandermondeSystem system(nodes);

  Features integral(x.size(), 0.0);
  std::vector<double> samples(nodes.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) samples[j] = grads[j][i];
    const std::vector<double> coeffs = system.solve(samples);
    // Integral of sum_j a_j t^j over [0, 1].
    double acc = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      acc += coeffs[j] / static_cast<double>(j + 1);
    }
    integral[i] = acc;
  }
  return make_attribution(model, x, baseline, integral);
}

IgAttribution integrated_gradients(const DifferentiableModel& model,
                                   std::span<const double> x,
                                   std::span<const double> baseline,
                                   const IgConfig& config) {
  return config.method == IgMethod::kTrapezoid
             ? ig_trapezoid(model, x, baseline, config.steps)
             : ig_vandermonde(model, x, baseline, config.poly_degree);
}

double check_completeness(IgAttribution& attr, const DifferentiableModel& model,
                          std::span<const double> x) {
  double total = 0.0;
  for (double v : attr.per_feature) total += v;
  attr.completeness_gap = std::abs(total - output_delta(model, x, attr.baseline));
  return attr.completeness_gap;
}

SensitivityReport check_sensitivity(const DifferentiableModel& model,
                                    std::span<const double> x,
                                    std::span<const double> baseline,
                                    const IgConfig& config) {
  check_inputs(model, x, baseline);
  SensitivityReport report;
  std::size_t differing = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != baseline[i]) {
      ++differing;
      report.feature = i;
    }
  }
  if (differing != 1) {
    report.reason = "input and baseline differ in " + std::to_string(differing) +
                    " features, expected exactly one";
    return report;
  }
  report.output_delta = output_delta(model, x, baseline);
  if (report.output_delta == 0.0) {
    report.reason = "model output is unchanged between baseline and input";
    return report;
  }

  report.applicable = true;
  report.trapezoid_attribution =
      ig_trapezoid(model, x, baseline, config.steps).per_feature[report.feature];
  report.vandermonde_attribution =
      ig_vandermonde(model, x, baseline, config.poly_degree)
          .per_feature[report.feature];
  const double floor = 1e-12 * std::abs(report.output_delta);
  report.holds = std::abs(report.trapezoid_attribution) > floor &&
                 std::abs(report.vandermonde_attribution) > floor;
  return report;
}

}  // namespace xaimat
