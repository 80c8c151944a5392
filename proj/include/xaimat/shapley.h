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

#ifndef XAIMAT_SHAPLEY_H_
#define XAIMAT_SHAPLEY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "xaimat/matrix.h"
#include "xaimat/models.h"

namespace xaimat {

inline constexpr std::size_t kMaxPlayers = 20;
inline constexpr std::size_t kMaxPermutationPlayers = 8;

// Coalition value function stored as its structure vector: entry `mask` is
// v(S) with bit i set iff player i is in S. Entry 0 is v(empty set).
class CoalitionGame {
 public:
  CoalitionGame(std::size_t n_players, std::vector<double> structure_vector);

  std::size_t n_players() const { return n_; }
  std::span<const double> structure_vector() const { return values_; }
  double value(std::uint32_t mask) const { return values_[mask]; }
  double grand_value() const { return values_.back(); }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

struct ShapleyVector {
  std::vector<double> phi;
  double efficiency_gap = 0.0;  // |sum phi - (v(N) - v(empty))|
};

// Weight |S|! (n - |S| - 1)! / n! of a coalition of size s not containing i.
double shapley_weight(std::size_t n, std::size_t s);

// Average marginal contribution over all n! join orders. n <= 8.
ShapleyVector shapley_permutation(const CoalitionGame& game);

// Direct subset-weighted sum.
ShapleyVector shapley_subset(const CoalitionGame& game);

// n x 2^n attribution weights: A[i][mask] = +w(|mask| - 1) when i is in mask,
// -w(|mask|) otherwise, so phi = A * C_v.
RealMatrix shapley_weight_matrix(std::size_t n_players);

// phi = A * C_v through block_matmul.
ShapleyVector shapley_matrix(const CoalitionGame& game, std::size_t workers);

// v(S) = F(z_S), z_S taking x on S and the baseline elsewhere. Evaluates the
// model exactly 2^n times, split across `workers`.
CoalitionGame game_from_model(const DifferentiableModel& model,
                              std::span<const double> x,
                              std::span<const double> baseline,
                              std::size_t workers = 1);

}  // namespace xaimat

#endif  // XAIMAT_SHAPLEY_H_
