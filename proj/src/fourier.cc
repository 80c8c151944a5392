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

#include "xaimat/fourier.h"

#include <cmath>
#include <numbers>

#include "xaimat/linalg.h"
#include "xaimat/parallel.h"

namespace xaimat {
namespace {

// exp(-2*pi*i*p/q) for an integer phase p in [0, q).
Complex twiddle(std::size_t p, std::size_t q) {
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(p) /
                       static_cast<double>(q);
  return {std::cos(angle), std::sin(angle)};
}

ComplexMatrix conjugated(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (Complex& v : out.data()) v = std::conj(v);
  return out;
}

// (W_M x) W_N with the given operators, rows first then columns.
ComplexMatrix two_stage(const ComplexMatrix& x, const ComplexMatrix& w_rows,
                        const ComplexMatrix& w_cols, std::size_t workers) {
  const SliceOp row_stage{"dft-rows", [&w_cols](const ComplexMatrix& slice) {
                            return matmul(slice, w_cols);
                          }};
  const SliceOp col_stage{"dft-cols", [&w_rows](const ComplexMatrix& slice) {
                            return matmul(w_rows, slice);
                          }};
  const ComplexMatrix intermediate =
      execute_plan(x, plan_partition(x.rows(), workers, Axis::kRows), row_stage);
  return execute_plan(intermediate,
                      plan_partition(x.cols(), workers, Axis::kCols), col_stage);
}

}  // namespace

DftMatrix::DftMatrix(std::size_t size) : matrix_(1, 1) {
  if (size == 0) throw EmptyInputError("dft_matrix: size must be >= 1");
  ComplexMatrix m(size, size);
  const double norm = 1.0 / std::sqrt(static_cast<double>(size));
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t n = 0; n < size; ++n) {
      m(k, n) = twiddle((k * n) % size, size) * norm;
    }
  }
  matrix_ = std::move(m);
}

DftMatrix DftMatrix::conjugate() const { return DftMatrix(conjugated(matrix_)); }

DftMatrix dft_matrix(std::size_t m) { return DftMatrix(m); }

ComplexMatrix dft2d_direct(const ComplexMatrix& x) {
  const std::size_t rows = x.rows();
  const std::size_t cols = x.cols();
  const double norm = 1.0 / std::sqrt(static_cast<double>(rows * cols));
  std::vector<Complex> row_phase(rows);
  std::vector<Complex> col_phase(cols);
  for (std::size_t p = 0; p < rows; ++p) row_phase[p] = twiddle(p, rows);
  for (std::size_t p = 0; p < cols; ++p) col_phase[p] = twiddle(p, cols);

  ComplexMatrix out(rows, cols);
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t l = 0; l < cols; ++l) {
      Complex acc = 0.0;
      for (std::size_t n = 0; n < cols; ++n) {
        Complex inner = 0.0;
        for (std::size_t m = 0; m < rows; ++m) {
          inner += x(m, n) * row_phase[(m * k) % rows];
        }
        acc += inner * col_phase[(n * l) % cols];
      }
      out(k, l) = acc * norm;
    }
  }
  return out;
}

ComplexMatrix dft2d_decomposed(const ComplexMatrix& x, std::size_t workers) {
  if (workers == 0) throw InvalidArgument("dft2d_decomposed: workers must be >= 1");
  const DftMatrix w_m(x.rows());
  const DftMatrix w_n(x.cols());
  return two_stage(x, w_m.matrix(), w_n.matrix(), workers);
}

ComplexMatrix idft2d(const ComplexMatrix& x, std::size_t workers) {
  if (workers == 0) throw InvalidArgument("idft2d: workers must be >= 1");
  const DftMatrix w_m = DftMatrix(x.rows()).conjugate();
  const DftMatrix w_n = DftMatrix(x.cols()).conjugate();
  return two_stage(x, w_m.matrix(), w_n.matrix(), workers);
}

}  // namespace xaimat
