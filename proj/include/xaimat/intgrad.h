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

#ifndef XAIMAT_INTGRAD_H_
#define XAIMAT_INTGRAD_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "xaimat/models.h"

namespace xaimat {

enum class IgMethod { kTrapezoid, kVandermonde };

const char* to_string(IgMethod method);

struct IgConfig {
  std::size_t steps = 50;       // trapezoid panels
  std::size_t poly_degree = 8;  // interpolating polynomial degree, <= 31
  IgMethod method = IgMethod::kTrapezoid;
};

struct IgAttribution {
  Features per_feature;
  double completeness_gap = 0.0;  // |sum IG_i - (F(x) - F(baseline))|
  Features baseline;
};

// Straight-path IG by the composite trapezoid rule over `steps` panels. The
// gradient is sampled once per node (steps + 1 total) and shared across
// features.
IgAttribution ig_trapezoid(const DifferentiableModel& model,
                           std::span<const double> x,
                           std::span<const double> baseline, std::size_t steps);

// Samples the path gradient at degree + 1 uniform nodes on [0, 1], fits each
// feature's gradient with a polynomial through one Vandermonde factorization,
// and integrates the polynomials exactly.
IgAttribution ig_vandermonde(const DifferentiableModel& model,
                             std::span<const double> x,
                             std::span<const double> baseline,
                             std::size_t degree);

IgAttribution integrated_gradients(const DifferentiableModel& model,
                                   std::span<const double> x,
                                   std::span<const double> baseline,
                                   const IgConfig& config);

// |sum attr - (F(x) - F(baseline))|; also written back into attr.
double check_completeness(IgAttribution& attr, const DifferentiableModel& model,
                          std::span<const double> x);

struct SensitivityReport {
  bool applicable = false;
  std::string reason;  // why not applicable
  std::size_t feature = 0;
  double output_delta = 0.0;
  double trapezoid_attribution = 0.0;
  double vandermonde_attribution = 0.0;
  bool holds = false;
};

// When x and baseline differ in exactly one feature and the outputs differ,
// checks that both IG methods give that feature a nonzero attribution
// (|IG_i| > 1e-12 |F(x) - F(baseline)|). Otherwise reports not-applicable.
SensitivityReport check_sensitivity(const DifferentiableModel& model,
                                    std::span<const double> x,
                                    std::span<const double> baseline,
                                    const IgConfig& config = {});

}  // namespace xaimat

#endif  // XAIMAT_INTGRAD_H_
