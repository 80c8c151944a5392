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

#include "xaimat/matrix.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace xaimat {
namespace {

template <typename T>
void require_same_shape(const Matrix<T>& a, const Matrix<T>& b,
                        const char* what) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(what) + ": shape mismatch " +
                     to_string(a.shape()) + " vs " + to_string(b.shape()));
  }
}

template <typename T, typename F>
Matrix<T> zip(const Matrix<T>& a, const Matrix<T>& b, const char* what, F f) {
  require_same_shape(a, b, what);
  Matrix<T> out(a.rows(), a.cols());
  auto da = a.data();
  auto db = b.data();
  auto dout = out.data();
  for (std::size_t i = 0; i < dout.size(); ++i) dout[i] = f(da[i], db[i]);
  return out;
}

}  // namespace

std::string to_string(const Shape& s) {
  return std::to_string(s.rows) + "x" + std::to_string(s.cols);
}

ComplexMatrix to_complex(const RealMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  std::copy(m.data().begin(), m.data().end(), out.data().begin());
  return out;
}

RealMatrix real_part(const ComplexMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  std::transform(m.data().begin(), m.data().end(), out.data().begin(),
                 [](const Complex& z) { return z.real(); });
  return out;
}

RealMatrix imag_part(const ComplexMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  std::transform(m.data().begin(), m.data().end(), out.data().begin(),
                 [](const Complex& z) { return z.imag(); });
  return out;
}

double frobenius_norm(const RealMatrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const Complex& v : m.data()) s += std::norm(v);
  return std::sqrt(s);
}

double frobenius_distance(const RealMatrix& a, const RealMatrix& b) {
  return frobenius_norm(subtract(a, b));
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return frobenius_norm(subtract(a, b));
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const Complex& v : m.data()) best = std::max(best, std::abs(v));
  return best;
}

RealMatrix add(const RealMatrix& a, const RealMatrix& b) {
  return zip(a, b, "add", [](double x, double y) { return x + y; });
}

RealMatrix subtract(const RealMatrix& a, const RealMatrix& b) {
  return zip(a, b, "subtract", [](double x, double y) { return x - y; });
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  return zip(a, b, "add", [](Complex x, Complex y) { return x + y; });
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
  return zip(a, b, "subtract", [](Complex x, Complex y) { return x - y; });
}

RealMatrix scale(const RealMatrix& m, double s) {
  RealMatrix out = m;
  for (double& v : out.data()) v *= s;
  return out;
}

ComplexMatrix scale(const ComplexMatrix& m, Complex s) {
  ComplexMatrix out = m;
  for (Complex& v : out.data()) v *= s;
  return out;
}

}  // namespace xaimat
