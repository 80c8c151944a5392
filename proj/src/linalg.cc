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

#include "xaimat/linalg.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "xaimat/parallel.h"

namespace xaimat {
namespace {

template <typename T>
void require_conformable(const Matrix<T>& a, const Matrix<T>& b,
                         const char* what) {
  if (a.cols() != b.rows()) {
    throw ShapeError(std::string(what) + ": cannot multiply " +
                     to_string(a.shape()) + " by " + to_string(b.shape()));
  }
}

// c[j] += a * b[j] for j in [0, n). The complex case is spelled out on the
// interleaved doubles so the compiler can vectorize it; the arithmetic is
// the textbook (ac - bd, ad + bc) product followed by the add.
inline void axpy_row(double a, const double* b, double* c, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) c[j] += a * b[j];
}

inline void axpy_row(const Complex& a, const Complex* b, Complex* c,
                     std::size_t n) {
  const double ar = a.real();
  const double ai = a.imag();
  const double* bp = reinterpret_cast<const double*>(b);
  double* cp = reinterpret_cast<double*>(c);
  for (std::size_t j = 0; j < n; ++j) {
    const double br = bp[2 * j];
    const double bi = bp[2 * j + 1];
    cp[2 * j] += ar * br - ai * bi;
    cp[2 * j + 1] += ar * bi + ai * br;
  }
}

template <typename T>
Matrix<T> matmul_impl(const Matrix<T>& a, const Matrix<T>& b) {
  require_conformable(a, b, "matmul");
  Matrix<T> c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T* crow = c.row(i).data();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      axpy_row(a(i, k), b.row(k).data(), crow, n);
    }
  }
  return c;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

template <typename T>
Matrix<T> block_matmul_impl(const Matrix<T>& a, const Matrix<T>& b,
                            BlockSpec spec, std::size_t workers) {
  require_conformable(a, b, "block_matmul");
  if (spec.block_rows == 0 || spec.block_cols == 0) {
    throw InvalidArgument("block_matmul: block dimensions must be >= 1");
  }
  if (workers == 0) throw InvalidArgument("block_matmul: workers must be >= 1");

  const std::size_t m = a.rows();
  const std::size_t inner = a.cols();
  const std::size_t n = b.cols();
  const std::size_t tile_rows = ceil_div(m, spec.block_rows);
  const std::size_t tile_cols = ceil_div(n, spec.block_cols);
  const std::size_t inner_blocks = ceil_div(inner, spec.block_cols);

  Matrix<T> c(m, n);
  // Every task owns a disjoint output tile, so workers never share writes.
  run_round_robin(tile_rows * tile_cols, workers, [&](std::size_t task) {
    const std::size_t i0 = (task / tile_cols) * spec.block_rows;
    const std::size_t j0 = (task % tile_cols) * spec.block_cols;
    const std::size_t i1 = std::min(m, i0 + spec.block_rows);
    const std::size_t j1 = std::min(n, j0 + spec.block_cols);
    for (std::size_t kb = 0; kb < inner_blocks; ++kb) {
      const std::size_t k0 = kb * spec.block_cols;
      const std::size_t k1 = std::min(inner, k0 + spec.block_cols);
      for (std::size_t i = i0; i < i1; ++i) {
        T* crow = c.row(i).data() + j0;
        for (std::size_t k = k0; k < k1; ++k) {
          axpy_row(a(i, k), b.row(k).data() + j0, crow, j1 - j0);
        }
      }
    }
  });
  return c;
}

}  // namespace

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
  return matmul_impl(a, b);
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul_impl(a, b);
}

RealMatrix block_matmul(const RealMatrix& a, const RealMatrix& b,
                        BlockSpec spec, std::size_t workers) {
  return block_matmul_impl(a, b, spec, workers);
}

ComplexMatrix block_matmul(const ComplexMatrix& a, const ComplexMatrix& b,
                           BlockSpec spec, std::size_t workers) {
  return block_matmul_impl(a, b, spec, workers);
}

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.shape() != b.shape()) {
    throw ShapeError("hadamard: shape mismatch " + to_string(a.shape()) +
                     " vs " + to_string(b.shape()));
  }
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.data()[i] = a.data()[i] * b.data()[i];
  }
  return out;
}

ComplexMatrix hadamard_div(const ComplexMatrix& num, const ComplexMatrix& den,
                           double lambda) {
  if (num.shape() != den.shape()) {
    throw ShapeError("hadamard_div: shape mismatch " + to_string(num.shape()) +
                     " vs " + to_string(den.shape()));
  }
  if (!(lambda >= 0.0)) {
    throw InvalidArgument("hadamard_div: lambda must be >= 0");
  }
  ComplexMatrix out(num.rows(), num.cols());
  for (std::size_t r = 0; r < num.rows(); ++r) {
    for (std::size_t c = 0; c < num.cols(); ++c) {
      const Complex d = den(r, c);
      const double power = std::norm(d) + lambda;
      if (power == 0.0) {
        throw SingularSpectrumError(
            r, c,
            "singular spectrum: denominator vanishes at (" + std::to_string(r) +
                ", " + std::to_string(c) + "); use a positive lambda");
      }
      out(r, c) = num(r, c) * std::conj(d) / power;
    }
  }
  return out;
}

double default_lambda(const ComplexMatrix& den) {
  const double peak = max_abs(den);
  return 1e-9 * peak * peak;
}

VandermondeSystem::VandermondeSystem(std::span<const double> nodes)
    : n_(nodes.size()), nodes_(nodes.begin(), nodes.end()) {
  if (n_ == 0) throw EmptyInputError("vandermonde: no interpolation nodes");
  if (n_ > kMaxVandermondePoints) {
    throw SizeLimitError("vandermonde: " + std::to_string(n_) +
                         " nodes exceeds the limit of " +
                         std::to_string(kMaxVandermondePoints) +
                         " (degree <= 31)");
  }
  powers_.assign(n_ * n_, 0.0L);
  for (std::size_t i = 0; i < n_; ++i) {
    long double p = 1.0L;
    for (std::size_t j = 0; j < n_; ++j) {
      powers_[i * n_ + j] = p;
      p *= nodes[i];
    }
  }
  lu_.assign(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double power = 1.0;
    for (std::size_t j = 0; j < n_; ++j) {
      lu_[i * n_ + j] = power;
      power *= nodes[i];
    }
  }
  pivots_.resize(n_);
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n_; ++r) {
      if (std::abs(lu_[r * n_ + col]) > std::abs(lu_[best * n_ + col])) best = r;
    }
    pivots_[col] = best;
    if (best != col) {
      std::swap_ranges(lu_.begin() + col * n_, lu_.begin() + (col + 1) * n_,
                       lu_.begin() + best * n_);
    }
    const double pivot = lu_[col * n_ + col];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw SingularMatrixError(
          "vandermonde: singular matrix (duplicate nodes?) at column " +
          std::to_string(col));
    }
    for (std::size_t r = col + 1; r < n_; ++r) {
      const double factor = lu_[r * n_ + col] / pivot;
      lu_[r * n_ + col] = factor;
      for (std::size_t j = col + 1; j < n_; ++j) {
        lu_[r * n_ + j] -= factor * lu_[col * n_ + j];
      }
    }
  }
}

std::vector<double> VandermondeSystem::substitute(std::vector<double> x) const {
  for (std::size_t col = 0; col < n_; ++col) {
    std::swap(x[col], x[pivots_[col]]);
  }
  for (std::size_t r = 1; r < n_; ++r) {
    for (std::size_t j = 0; j < r; ++j) x[r] -= lu_[r * n_ + j] * x[j];
  }
  for (std::size_t r = n_; r-- > 0;) {
    for (std::size_t j = r + 1; j < n_; ++j) x[r] -= lu_[r * n_ + j] * x[j];
    x[r] /= lu_[r * n_ + r];
  }
  return x;
}

std::vector<double> VandermondeSystem::solve(
    std::span<const double> values) const {
  if (values.size() != n_) {
    throw ShapeError("vandermonde: " + std::to_string(values.size()) +
                     " values for " + std::to_string(n_) + " nodes");
  }
  std::vector<double> x = substitute({values.begin(), values.end()});
  std::vector<double> residual(n_);
  for (int round = 0; round < 2; ++round) {
    for (std::size_t i = 0; i < n_; ++i) {
      long double acc = 0.0L;
      for (std::size_t j = n_; j-- > 0;) {
        acc = acc * static_cast<long double>(nodes_[i]) + x[j];
      }
      residual[i] = static_cast<double>(values[i] - acc);
    }
    const std::vector<double> delta = substitute(residual);
    for (std::size_t j = 0; j < n_; ++j) x[j] += delta[j];
  }
  polish(x, values);
  return x;
}

// Coordinate descent over one-ulp moves of each coefficient, minimizing the
// largest residual on the nodes. Residuals are updated incrementally.
void VandermondeSystem::polish(std::vector<double>& x,
                               std::span<const double> values) const {
  constexpr int kMaxPasses = 20;
  std::vector<long double> r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    long double acc = 0.0L;
    for (std::size_t j = n_; j-- > 0;) {
      acc = acc * static_cast<long double>(nodes_[i]) + x[j];
    }
    r[i] = acc - values[i];
  }
  auto worst = [&](std::size_t j, long double step) {
    long double w = 0.0L;
    for (std::size_t i = 0; i < n_; ++i) {
      w = std::max(w, std::fabs(r[i] + step * powers_[i * n_ + j]));
    }
    return w;
  };
  long double best = worst(0, 0.0L);
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool improved = false;
    for (std::size_t j = 0; j < n_; ++j) {
      for (const double toward : {-HUGE_VAL, HUGE_VAL}) {
        const double moved = std::nextafter(x[j], toward);
        const long double step = static_cast<long double>(moved) - x[j];
        const long double w = worst(j, step);
        if (w < best) {
          for (std::size_t i = 0; i < n_; ++i) r[i] += step * powers_[i * n_ + j];
          x[j] = moved;
          best = w;
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
}

std::vector<double> vandermonde_solve(std::span<const double> nodes,
                                      std::span<const double> values) {
  if (nodes.size() != values.size()) {
    throw ShapeError("vandermonde_solve: " + std::to_string(nodes.size()) +
                     " nodes but " + std::to_string(values.size()) + " values");
  }
  return VandermondeSystem(nodes).solve(values);
}

double polynomial_eval(std::span<const double> coeffs, double x) {
  long double acc = 0.0L;
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    acc = acc * static_cast<long double>(x) + coeffs[j];
  }
  return static_cast<double>(acc);
}

}  // namespace xaimat
