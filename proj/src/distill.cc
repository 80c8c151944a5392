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

#include "xaimat/distill.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "xaimat/fourier.h"
#include "xaimat/linalg.h"
#include "xaimat/parallel.h"

namespace xaimat {
namespace {

void require_same_shape(const RealMatrix& a, const RealMatrix& b,
                        const char* what) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(what) + ": shape mismatch " +
                     to_string(a.shape()) + " vs " + to_string(b.shape()));
  }
}

double sqrt_size(const RealMatrix& m) {
  return std::sqrt(static_cast<double>(m.rows() * m.cols()));
}

ComplexMatrix spectrum(const RealMatrix& m, std::size_t workers) {
  return dft2d_decomposed(to_complex(m), workers);
}

// Spectral magnitudes at or below this fraction of the peak are roundoff
// residue of a true zero.
constexpr double kVanishingSpectrum = 1e-12;

void require_resolvable(const ComplexMatrix& den) {
  const double floor = kVanishingSpectrum * max_abs(den);
  for (std::size_t r = 0; r < den.rows(); ++r) {
    for (std::size_t c = 0; c < den.cols(); ++c) {
      if (std::abs(den(r, c)) <= floor) {
        throw SingularSpectrumError(
            r, c,
            "fit_kernel: spectrum of the input vanishes at (" +
                std::to_string(r) + ", " + std::to_string(c) +
                "); exact division is undefined, pass a positive lambda");
      }
    }
  }
}

}  // namespace

RealMatrix circconv(const RealMatrix& x, const RealMatrix& k) {
  require_same_shape(x, k, "circconv");
  const std::size_t rows = x.rows();
  const std::size_t cols = x.cols();
  RealMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double acc = 0.0;
      for (std::size_t p = 0; p < rows; ++p) {
        const std::size_t kr = (r + rows - p) % rows;
        for (std::size_t q = 0; q < cols; ++q) {
          acc += x(p, q) * k(kr, (c + cols - q) % cols);
        }
      }
      out(r, c) = acc;
    }
  }
  return out;
}

RealMatrix circconv_spectral(const RealMatrix& x, const RealMatrix& k,
                             std::size_t workers) {
  require_same_shape(x, k, "circconv_spectral");
  const ComplexMatrix product =
      scale(hadamard(spectrum(x, workers), spectrum(k, workers)), sqrt_size(x));
  return real_part(idft2d(product, workers));
}

DistilledKernel fit_kernel(const RealMatrix& x, const RealMatrix& y,
                           std::optional<double> lambda, std::size_t workers) {
  require_same_shape(x, y, "fit_kernel");
  if (lambda && !(*lambda >= 0.0)) {
    throw InvalidArgument("fit_kernel: lambda must be >= 0");
  }
  // Unitary transforms pick up a sqrt(MN) factor in the convolution theorem.
  const ComplexMatrix den = scale(spectrum(x, workers), sqrt_size(x));
  const ComplexMatrix num = spectrum(y, workers);
  const double lam = lambda.value_or(default_lambda(den));
  if (lam == 0.0) require_resolvable(den);

  ComplexMatrix quotient(1, 1);
  try {
    quotient = hadamard_div(num, den, lam);
  } catch (const SingularSpectrumError& e) {
    throw SingularSpectrumError(
        e.row(), e.col(),
        "fit_kernel: spectrum of the input vanishes at (" +
            std::to_string(e.row()) + ", " + std::to_string(e.col()) +
            "); exact division is undefined, pass a positive lambda");
  }
  const ComplexMatrix k = idft2d(quotient, workers);

  DistilledKernel out{real_part(k), lam, 0.0, frobenius_norm(imag_part(k))};
  out.residual =
      frobenius_distance(circconv_spectral(x, out.kernel, workers), y);
  return out;
}

DistilledKernel fit_kernel_multi(std::span<const RealMatrix> xs,
                                 std::span<const RealMatrix> ys,
                                 std::optional<double> lambda,
                                 std::size_t workers) {
  if (xs.empty()) throw EmptyInputError("fit_kernel_multi: no training pairs");
  if (xs.size() != ys.size()) {
    throw ShapeError("fit_kernel_multi: " + std::to_string(xs.size()) +
                     " inputs but " + std::to_string(ys.size()) + " outputs");
  }
  DistilledKernel first = fit_kernel(xs[0], ys[0], lambda, workers);
  RealMatrix sum = first.kernel;
  double lambda_sum = first.lambda_used;
  double imag_sum = first.imag_residue;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const DistilledKernel k = fit_kernel(xs[i], ys[i], lambda, workers);
    sum = add(sum, k.kernel);
    lambda_sum += k.lambda_used;
    imag_sum += k.imag_residue;
  }
  const double count = static_cast<double>(xs.size());
  DistilledKernel out{scale(sum, 1.0 / count), lambda_sum / count, 0.0,
                      imag_sum / count};
  double residual_sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    residual_sum += frobenius_distance(
        circconv_spectral(xs[i], out.kernel, workers), ys[i]);
  }
  out.residual = residual_sum / count;
  return out;
}

ContributionMap contribution_map(const RealMatrix& x, const RealMatrix& y,
                                 const DistilledKernel& kernel,
                                 std::size_t block_rows, std::size_t block_cols,
                                 std::size_t workers) {
  require_same_shape(x, y, "contribution_map");
  require_same_shape(x, kernel.kernel, "contribution_map");
  if (block_rows == 0 || block_cols == 0) {
    throw InvalidArgument("contribution_map: block dimensions must be >= 1");
  }
  const std::size_t rows = x.rows();
  const std::size_t cols = x.cols();
  if (block_rows > rows || block_cols > cols) {
    throw InvalidArgument("contribution_map: block " + std::to_string(block_rows) +
                          "x" + std::to_string(block_cols) +
                          " is larger than the " + to_string(x.shape()) +
                          " input");
  }

  const std::size_t grid_rows = (rows + block_rows - 1) / block_rows;
  const std::size_t grid_cols = (cols + block_cols - 1) / block_cols;
  const ComplexMatrix kernel_spectrum = spectrum(kernel.kernel, workers);
  const ComplexMatrix w_m = DftMatrix(rows).matrix();
  const ComplexMatrix w_n = DftMatrix(cols).matrix();
  const double gain = sqrt_size(x);
  const ComplexMatrix xc = to_complex(x);

  ContributionMap map{RealMatrix(grid_rows, grid_cols), block_rows, block_cols,
                      0.0};
  run_round_robin(grid_rows * grid_cols, workers, [&](std::size_t block) {
    const std::size_t r0 = (block / grid_cols) * block_rows;
    const std::size_t c0 = (block % grid_cols) * block_cols;
    const std::size_t nr = std::min(block_rows, rows - r0);
    const std::size_t nc = std::min(block_cols, cols - c0);

    // F(x_i) = W_M[:, r0:r0+nr] * x[r0:, c0:] * W_N[c0:c0+nc, :]
    const ComplexMatrix patch = xc.row_block(r0, nr).col_block(c0, nc);
    const ComplexMatrix left = w_m.col_block(r0, nr);
    const ComplexMatrix right = w_n.row_block(c0, nc);
    const ComplexMatrix block_spectrum = matmul(matmul(left, patch), right);

    // ||x_i * K||_F == ||sqrt(MN) F(x_i) o F(K)||_F by Parseval.
    double energy = 0.0;
    for (std::size_t e = 0; e < block_spectrum.size(); ++e) {
      energy += std::norm(gain * block_spectrum.data()[e] *
                          kernel_spectrum.data()[e]);
    }
    map.per_feature(block / grid_cols, block % grid_cols) = std::sqrt(energy);
  });
  map.fit_residual =
      frobenius_distance(y, circconv_spectral(x, kernel.kernel, workers));
  return map;
}

std::vector<RankedBlock> rank_features(const ContributionMap& map,
                                       std::size_t top_k) {
  const auto scores = map.per_feature.data();
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  order.resize(std::min(top_k, order.size()));
  std::vector<RankedBlock> ranked;
  ranked.reserve(order.size());
  for (std::size_t i : order) ranked.push_back({i, scores[i]});
  return ranked;
}

}  // namespace xaimat
