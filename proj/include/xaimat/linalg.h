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

#ifndef XAIMAT_LINALG_H_
#define XAIMAT_LINALG_H_

#include <cstddef>
#include <span>
#include <vector>

#include "xaimat/matrix.h"

namespace xaimat {

// Tile geometry for block_matmul. The output is cut into
// block_rows x block_cols tiles and the shared inner dimension is stepped in
// chunks of block_cols.
struct BlockSpec {
  std::size_t block_rows = 64;
  std::size_t block_cols = 64;
};

// Reference product. Accumulates in (i, k, j) order, so repeated calls are
// bit-reproducible.
RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Tiled product. Output tiles are distributed over `workers` threads; every
// tile sums its inner-dimension blocks in ascending order, so the result does
// not depend on the worker count.
RealMatrix block_matmul(const RealMatrix& a, const RealMatrix& b,
                        BlockSpec spec, std::size_t workers);
ComplexMatrix block_matmul(const ComplexMatrix& a, const ComplexMatrix& b,
                           BlockSpec spec, std::size_t workers);

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b);

// Element-wise num * conj(den) / (|den|^2 + lambda). With lambda == 0 any
// zero in den raises SingularSpectrumError naming the first (row, col).
ComplexMatrix hadamard_div(const ComplexMatrix& num, const ComplexMatrix& den,
                           double lambda);

// 1e-9 * max|den|^2, the regularization used when the caller does not pick one.
double default_lambda(const ComplexMatrix& den);

inline constexpr std::size_t kMaxVandermondePoints = 32;

// LU factorization (partial pivoting) of the explicitly formed Vandermonde
// matrix V[i][j] = nodes[i]^j. One factorization serves many right-hand sides.
// Solutions get two rounds of iterative refinement with extended-precision
// residuals, then one-ulp polishing of the coefficients against the node
// residuals.
class VandermondeSystem {
 public:
  explicit VandermondeSystem(std::span<const double> nodes);

  std::size_t size() const { return n_; }

  // Coefficients a_0..a_{n-1} with sum_j a_j nodes[i]^j == values[i].
  std::vector<double> solve(std::span<const double> values) const;

 private:
  std::vector<double> substitute(std::vector<double> rhs) const;
  void polish(std::vector<double>& x, std::span<const double> values) const;

  std::size_t n_;
  std::vector<double> nodes_;
  std::vector<long double> powers_;  // nodes[i]^j, row-major
  std::vector<double> lu_;
  std::vector<std::size_t> pivots_;
};

std::vector<double> vandermonde_solve(std::span<const double> nodes,
                                      std::span<const double> values);

// Horner evaluation of sum_j coeffs[j] x^j, accumulated in long double.
double polynomial_eval(std::span<const double> coeffs, double x);

}  // namespace xaimat

#endif  // XAIMAT_LINALG_H_
