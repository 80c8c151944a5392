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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "support/oracles.h"

namespace xaimat {
namespace {

using testing::naive_matmul;
using testing::random_complex;
using testing::random_real;

TEST(MatrixTest, RejectsEmptyAndMismatchedShapes) {
  EXPECT_THROW(RealMatrix(0, 3), ShapeError);
  EXPECT_THROW(RealMatrix(2, 2, std::vector<double>{1, 2, 3}), ShapeError);
}

TEST(MatrixTest, BlocksAndTranspose) {
  const RealMatrix m(2, 3, std::vector<double>{1, 2, 3, 4, 5, 6});
  EXPECT_EQ(m.row_block(1, 1), RealMatrix(1, 3, std::vector<double>{4, 5, 6}));
  EXPECT_EQ(m.col_block(1, 2), RealMatrix(2, 2, std::vector<double>{2, 3, 5, 6}));
  EXPECT_EQ(m.transpose(), RealMatrix(3, 2, std::vector<double>{1, 4, 2, 5, 3, 6}));
}

TEST(MatmulTest, IdentityLeavesOperandUnchanged) {
  std::mt19937_64 rng(1);
  const ComplexMatrix m = random_complex(rng, 3, 3);
  EXPECT_EQ(matmul(ComplexMatrix::identity(3), m), m);
}

TEST(MatmulTest, ZerosAnnihilate) {
  std::mt19937_64 rng(2);
  const ComplexMatrix m = random_complex(rng, 3, 4);
  EXPECT_EQ(matmul(ComplexMatrix(2, 3), m), ComplexMatrix(2, 4));
}

TEST(MatmulTest, MatchesNaiveProductExactly) {
  std::mt19937_64 rng(3);
  const ComplexMatrix a = random_complex(rng, 5, 4);
  const ComplexMatrix b = random_complex(rng, 4, 6);
  const ComplexMatrix got = matmul(a, b);
  const ComplexMatrix want = naive_matmul(a, b);
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got.data()[i], want.data()[i]) << "entry " << i;
  }
  const RealMatrix ra = random_real(rng, 5, 4);
  const RealMatrix rb = random_real(rng, 4, 6);
  EXPECT_EQ(matmul(ra, rb), naive_matmul(ra, rb));
}

TEST(MatmulTest, RejectsNonConformable) {
  EXPECT_THROW(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), ShapeError);
}

TEST(BlockMatmulTest, IdentityTimesRandom) {
  std::mt19937_64 rng(4);
  const ComplexMatrix b = random_complex(rng, 4, 4);
  const ComplexMatrix got =
      block_matmul(ComplexMatrix::identity(4), b, BlockSpec{2, 2}, 2);
  EXPECT_LE(frobenius_distance(got, b), 1e-12);
}

TEST(BlockMatmulTest, NonDivisibleTilingMatchesMatmul) {
  std::mt19937_64 rng(5);
  const ComplexMatrix a = random_complex(rng, 8, 8);
  const ComplexMatrix b = random_complex(rng, 8, 8);
  const ComplexMatrix want = matmul(a, b);
  EXPECT_LE(frobenius_distance(block_matmul(a, b, BlockSpec{3, 3}, 4), want),
            1e-12 * (1.0 + frobenius_norm(want)));
}

TEST(BlockMatmulTest, BitIdenticalAcrossWorkers) {
  std::mt19937_64 rng(6);
  const ComplexMatrix a = random_complex(rng, 13, 9);
  const ComplexMatrix b = random_complex(rng, 9, 11);
  EXPECT_EQ(block_matmul(a, b, BlockSpec{4, 3}, 1),
            block_matmul(a, b, BlockSpec{4, 3}, 8));
}

TEST(BlockMatmulTest, RejectsZeroBlockOrWorkers) {
  const ComplexMatrix a(2, 2);
  EXPECT_THROW(block_matmul(a, a, BlockSpec{0, 2}, 1), InvalidArgument);
  EXPECT_THROW(block_matmul(a, a, BlockSpec{2, 2}, 0), InvalidArgument);
  EXPECT_THROW(block_matmul(a, ComplexMatrix(3, 2), BlockSpec{2, 2}, 1),
               ShapeError);
}

// Random shapes, block specs and worker counts.
TEST(BlockMatmulProperty, AgreesWithMatmulAndIsWorkerInvariant) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> dim(1, 24);
  std::uniform_int_distribution<std::size_t> blk(1, 9);
  std::uniform_int_distribution<std::size_t> wk(1, 8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = dim(rng), k = dim(rng), n = dim(rng);
    const ComplexMatrix a = random_complex(rng, m, k);
    const ComplexMatrix b = random_complex(rng, k, n);
    const BlockSpec spec{blk(rng), blk(rng)};
    const ComplexMatrix want = matmul(a, b);
    const ComplexMatrix one = block_matmul(a, b, spec, 1);
    EXPECT_LE(frobenius_distance(one, want), 1e-12 * (1.0 + frobenius_norm(want)));
    EXPECT_EQ(one, block_matmul(a, b, spec, wk(rng)));
  }
}

TEST(HadamardDivTest, SelfDivisionGivesOnes) {
  std::mt19937_64 rng(8);
  const ComplexMatrix d = random_complex(rng, 3, 4);
  const ComplexMatrix q = hadamard_div(d, d, 0.0);
  for (const Complex& v : q.data()) {
    EXPECT_NEAR(v.real(), 1.0, 1e-15);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
  }
}

TEST(HadamardDivTest, ZeroDenominatorReportsPosition) {
  ComplexMatrix den(3, 4, Complex{1.0, 0.5});
  den(1, 2) = 0.0;
  try {
    hadamard_div(ComplexMatrix(3, 4, Complex{1.0}), den, 0.0);
    FAIL() << "expected SingularSpectrumError";
  } catch (const SingularSpectrumError& e) {
    EXPECT_EQ(e.row(), 1u);
    EXPECT_EQ(e.col(), 2u);
  }
  // A positive lambda makes the same division well defined.
  EXPECT_NO_THROW(hadamard_div(ComplexMatrix(3, 4, Complex{1.0}), den, 1e-3));
}

TEST(HadamardDivProperty, RoundTripRecoversNumerator) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix num = random_complex(rng, 5, 7);
    const ComplexMatrix den = random_complex(rng, 5, 7);
    const ComplexMatrix back = hadamard(hadamard_div(num, den, 0.0), den);
    EXPECT_LE(frobenius_distance(back, num), 1e-12 * frobenius_norm(num));
  }
}

TEST(HadamardDivTest, DefaultLambdaScalesWithPeakPower) {
  ComplexMatrix den(2, 2, Complex{0.5});
  den(0, 1) = Complex{3.0, 4.0};
  EXPECT_DOUBLE_EQ(default_lambda(den), 1e-9 * 25.0);
}

TEST(VandermondeTest, ConstantPolynomial) {
  const std::vector<double> c = vandermonde_solve(std::vector<double>{0, 1, 2},
                                                  std::vector<double>{1, 1, 1});
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[0], 1.0, 1e-14);
  EXPECT_NEAR(c[1], 0.0, 1e-14);
  EXPECT_NEAR(c[2], 0.0, 1e-14);
}

TEST(VandermondeTest, QuadraticInterpolation) {
  const std::vector<double> c = vandermonde_solve(
      std::vector<double>{0, 1, 2}, std::vector<double>{2, 4, 4});
  EXPECT_NEAR(c[0], 2.0, 1e-10);
  EXPECT_NEAR(c[1], 3.0, 1e-10);
  EXPECT_NEAR(c[2], -1.0, 1e-10);
}

TEST(VandermondeTest, MatchesGaussJordanOracle) {
  std::mt19937_64 rng(10);
  const std::vector<double> nodes = testing::random_vector(rng, 9, 0.0, 1.0);
  const std::vector<double> values = testing::random_vector(rng, 9);
  const std::vector<double> got = vandermonde_solve(nodes, values);
  const std::vector<double> want = testing::gauss_jordan_vandermonde(nodes, values);
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    worst = std::max(worst, std::abs(got[i] - want[i]) /
                                (1.0 + std::abs(want[i])));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(VandermondeTest, ErrorPaths) {
  EXPECT_THROW(vandermonde_solve(std::vector<double>{0.0, 0.5, 0.5},
                                 std::vector<double>{1, 2, 3}),
               SingularMatrixError);
  EXPECT_THROW(vandermonde_solve(std::vector<double>(33, 0.0),
                                 std::vector<double>(33, 0.0)),
               SizeLimitError);
  EXPECT_THROW(vandermonde_solve(std::vector<double>{0, 1},
                                 std::vector<double>{1}),
               ShapeError);
}

TEST(VandermondeProperty, EvaluatesBackOnNodes) {
  std::mt19937_64 rng(11);
  for (std::size_t degree = 1; degree <= 12; ++degree) {
    std::vector<double> nodes(degree + 1);
    for (std::size_t j = 0; j <= degree; ++j) nodes[j] = double(j) / double(degree);
    const std::vector<double> values = testing::random_vector(rng, degree + 1);
    const std::vector<double> coeffs = vandermonde_solve(nodes, values);
    for (std::size_t j = 0; j <= degree; ++j) {
      EXPECT_NEAR(polynomial_eval(coeffs, nodes[j]), values[j], 1e-8)
          << "degree " << degree << " node " << j;
    }
  }
}

TEST(VandermondeTest, FactorizationIsReusable) {
  const VandermondeSystem system(std::vector<double>{0.0, 0.5, 1.0});
  const std::vector<double> a = system.solve(std::vector<double>{1, 1, 1});
  const std::vector<double> b = system.solve(std::vector<double>{0, 0.5, 1});
  EXPECT_NEAR(a[0], 1.0, 1e-14);
  EXPECT_NEAR(b[1], 1.0, 1e-14);
  EXPECT_NEAR(b[2], 0.0, 1e-14);
}

}  // namespace
}  // namespace xaimat
