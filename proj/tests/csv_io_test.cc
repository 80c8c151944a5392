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

#include "xaimat/csv_io.h"

#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>

#include "support/oracles.h"

namespace xaimat {
namespace {

TEST(CsvParseTest, ReadsRowsAndSkipsBlankLines) {
  const RealMatrix m = parse_matrix_csv("1, 2.5,-3\n\n4e-3,+5,6\r\n");
  EXPECT_EQ(m, RealMatrix(2, 3, std::vector<double>{1, 2.5, -3, 4e-3, 5, 6}));
}

TEST(CsvParseTest, Errors) {
  EXPECT_THROW(parse_matrix_csv(""), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,2\n3\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,x\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,,2\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,nan\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("inf\n"), ParseError);
  EXPECT_THROW(read_matrix_csv("/nonexistent/file.csv"), ParseError);
}

TEST(CsvProperty, FormatThenParseIsIdentity) {
  std::mt19937_64 rng(80);
  for (int trial = 0; trial < 50; ++trial) {
    RealMatrix m = testing::random_real(rng, 1 + trial % 7, 1 + trial % 5, -1e6, 1e6);
    m(0, 0) = std::numeric_limits<double>::denorm_min();
    m.data().back() = -0.0;
    const RealMatrix back = parse_matrix_csv(format_matrix_csv(m));
    ASSERT_EQ(back.shape(), m.shape());
    for (std::size_t i = 0; i < m.size(); ++i) {
      EXPECT_EQ(std::bit_cast<std::uint64_t>(back.data()[i]),
                std::bit_cast<std::uint64_t>(m.data()[i]));
    }
  }
}

TEST(CsvFileTest, WriteThenRead) {
  std::mt19937_64 rng(81);
  const RealMatrix m = testing::random_real(rng, 4, 3);
  const std::string path = ::testing::TempDir() + "/xaimat_csv_roundtrip.csv";
  write_matrix_csv(path, m);
  EXPECT_EQ(read_matrix_csv(path), m);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace xaimat
