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

#ifndef XAIMAT_FOURIER_H_
#define XAIMAT_FOURIER_H_

#include <cstddef>

#include "xaimat/matrix.h"

namespace xaimat {

// Unitary DFT operator: entry (k, m) = exp(-2*pi*i*m*k/M) / sqrt(M).
// The phase index m*k is reduced mod M before the exponential, which keeps
// the matrix exactly symmetric.
class DftMatrix {
 public:
  explicit DftMatrix(std::size_t size);

  std::size_t size() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  DftMatrix conjugate() const;

 private:
  explicit DftMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}

  ComplexMatrix matrix_;
};

DftMatrix dft_matrix(std::size_t m);

// Quadruple-loop evaluation of the 2-D DFT with 1/sqrt(MN) normalization.
// O(M^2 N^2); intended as the reference for the decomposed transform.
ComplexMatrix dft2d_direct(const ComplexMatrix& x);

// Row-column decomposition X = (W_M x) W_N. Stage one splits the rows across
// `workers` and transforms each row slice (slice * W_N); stage two splits the
// columns of the merged intermediate and transforms them (W_M * slice).
ComplexMatrix dft2d_decomposed(const ComplexMatrix& x, std::size_t workers);

// Inverse of dft2d_decomposed, using conjugated DFT matrices.
ComplexMatrix idft2d(const ComplexMatrix& x, std::size_t workers);

}  // namespace xaimat

#endif  // XAIMAT_FOURIER_H_
