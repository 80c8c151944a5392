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

#ifndef XAIMAT_DISTILL_H_
#define XAIMAT_DISTILL_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "xaimat/matrix.h"

namespace xaimat {

// 2-D circular convolution by direct double sum:
//   out[r][c] = sum_{p,q} x[p][q] * k[(r - p) mod M][(c - q) mod N]
RealMatrix circconv(const RealMatrix& x, const RealMatrix& k);

// Same result through the spectral route,
// F^-1( sqrt(MN) * F(x) o F(k) ), using the decomposed transform.
RealMatrix circconv_spectral(const RealMatrix& x, const RealMatrix& k,
                             std::size_t workers);

// Convolutional surrogate K with X * K ~= Y.
struct DistilledKernel {
  RealMatrix kernel;
  double lambda_used = 0.0;
  double residual = 0.0;      // ||circconv(x, kernel) - y||_F
  double imag_residue = 0.0;  // ||Im F^-1(...)||_F, discarded
};

// K = F^-1( F(y) / (sqrt(MN) F(x)) ) with regularized division. A missing
// lambda selects default_lambda of the denominator; lambda == 0 is exact and
// throws SingularSpectrumError on a vanishing spectrum element.
DistilledKernel fit_kernel(const RealMatrix& x, const RealMatrix& y,
                           std::optional<double> lambda, std::size_t workers);

// Fits each (x, y) pair independently and averages the kernels. Residual is
// the mean of the per-pair residuals of the averaged kernel.
DistilledKernel fit_kernel_multi(std::span<const RealMatrix> xs,
                                 std::span<const RealMatrix> ys,
                                 std::optional<double> lambda,
                                 std::size_t workers);

// Per-block contribution scores on a grid of block_rows x block_cols tiles
// (the last row/column of tiles may be smaller).
struct ContributionMap {
  RealMatrix per_feature;  // grid_rows x grid_cols
  std::size_t block_rows = 0;
  std::size_t block_cols = 0;
  double fit_residual = 0.0;  // ||y - x * K||_F, shared by every block

  std::size_t block_count() const { return per_feature.size(); }
};

// Scores block i by the change in the surrogate output when the block is
// zeroed: ||x * K - x' * K||_F = ||x_i * K||_F where x_i keeps only block i.
// Computed in the spectral domain (Parseval), so no inverse transform is
// needed per block. An all-zero block scores exactly 0.
ContributionMap contribution_map(const RealMatrix& x, const RealMatrix& y,
                                 const DistilledKernel& kernel,
                                 std::size_t block_rows, std::size_t block_cols,
                                 std::size_t workers = 1);

struct RankedBlock {
  std::size_t block_index = 0;  // row-major over the block grid
  double score = 0.0;

  friend bool operator==(const RankedBlock&, const RankedBlock&) = default;
};

// Descending score, ties by ascending index; top_k is clamped to the block
// count.
std::vector<RankedBlock> rank_features(const ContributionMap& map,
                                       std::size_t top_k);

}  // namespace xaimat

#endif  // XAIMAT_DISTILL_H_
