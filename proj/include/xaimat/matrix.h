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

#ifndef XAIMAT_MATRIX_H_
#define XAIMAT_MATRIX_H_

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xaimat/errors.h"

namespace xaimat {

using Complex = std::complex<double>;

struct Shape {
  std::size_t rows = 0;
  std::size_t cols = 0;

  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(const Shape& s);

// Dense row-major matrix. Always at least 1x1.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) {
      throw ShapeError("matrix dimensions must be >= 1, got " +
                       to_string(Shape{rows, cols}));
    }
    data_.assign(rows * cols, fill);
  }

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) {
      throw ShapeError("matrix dimensions must be >= 1, got " +
                       to_string(Shape{rows, cols}));
    }
    if (data_.size() != rows * cols) {
      throw ShapeError("data length " + std::to_string(data_.size()) +
                       " does not match " + to_string(Shape{rows, cols}));
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  Shape shape() const { return {rows_, cols_}; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  // Copies rows [start, start + count).
  Matrix row_block(std::size_t start, std::size_t count) const {
    Matrix out(count, cols_);
    std::copy(data_.begin() + start * cols_,
              data_.begin() + (start + count) * cols_, out.data_.begin());
    return out;
  }

  // Copies cols [start, start + count).
  Matrix col_block(std::size_t start, std::size_t count) const {
    Matrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, start + c);
    }
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

ComplexMatrix to_complex(const RealMatrix& m);
RealMatrix real_part(const ComplexMatrix& m);
RealMatrix imag_part(const ComplexMatrix& m);

double frobenius_norm(const RealMatrix& m);
double frobenius_norm(const ComplexMatrix& m);

// ||a - b||_F. Shapes must agree.
double frobenius_distance(const RealMatrix& a, const RealMatrix& b);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& m);

RealMatrix add(const RealMatrix& a, const RealMatrix& b);
RealMatrix subtract(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix scale(const RealMatrix& m, double s);
ComplexMatrix scale(const ComplexMatrix& m, Complex s);

}  // namespace xaimat

#endif  // XAIMAT_MATRIX_H_
