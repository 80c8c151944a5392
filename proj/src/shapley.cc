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

#include "xaimat/shapley.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "xaimat/linalg.h"
#include "xaimat/parallel.h"

namespace xaimat {
namespace {

double efficiency_gap(const CoalitionGame& game, std::span<const double> phi) {
  double total = 0.0;
  for (double p : phi) total += p;
  return std::abs(total - (game.grand_value() - game.value(0)));
}

ShapleyVector finish(const CoalitionGame& game, std::vector<double> phi) {
  ShapleyVector out{std::move(phi), 0.0};
  out.efficiency_gap = efficiency_gap(game, out.phi);
  return out;
}

// w(s) for s = 0..n-1.
std::vector<double> weights_by_size(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t s = 0; s < n; ++s) w[s] = shapley_weight(n, s);
  return w;
}

}  // namespace

CoalitionGame::CoalitionGame(std::size_t n_players,
                             std::vector<double> structure_vector)
    : n_(n_players), values_(std::move(structure_vector)) {
  if (n_ == 0) throw InvalidArgument("coalition game needs at least one player");
  if (n_ > kMaxPlayers) {
    throw SizeLimitError(std::to_string(n_) + " players exceeds the cap of " +
                         std::to_string(kMaxPlayers));
  }
  if (values_.size() != (std::size_t{1} << n_)) {
    throw ShapeError("structure vector has " + std::to_string(values_.size()) +
                     " entries, expected 2^" + std::to_string(n_));
  }
  for (std::size_t m = 0; m < values_.size(); ++m) {
    if (!std::isfinite(values_[m])) {
      throw InvalidArgument("structure vector entry " + std::to_string(m) +
                            " is not finite");
    }
  }
}

double shapley_weight(std::size_t n, std::size_t s) {
  // s! (n-s-1)! / n! == 1 / (n * C(n-1, s)); the binomial is exact for n <= 20.
  double binom = 1.0;
  const std::size_t k = std::min(s, n - 1 - s);
  for (std::size_t j = 1; j <= k; ++j) {
    binom = binom * static_cast<double>(n - j) / static_cast<double>(j);
  }
  return 1.0 / (static_cast<double>(n) * binom);
}

ShapleyVector shapley_permutation(const CoalitionGame& game) {
  const std::size_t n = game.n_players();
  if (n > kMaxPermutationPlayers) {
    throw SizeLimitError("shapley_permutation: " + std::to_string(n) +
                         " players would enumerate n! orderings; use the "
                         "subset form for n > " +
                         std::to_string(kMaxPermutationPlayers));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> sum(n, 0.0);
  std::size_t orderings = 0;
  do {
    std::uint32_t coalition = 0;
    for (std::size_t player : order) {
      const std::uint32_t joined = coalition | (std::uint32_t{1} << player);
      sum[player] += game.value(joined) - game.value(coalition);
      coalition = joined;
    }
    ++orderings;
  } while (std::next_permutation(order.begin(), order.end()));

  for (double& s : sum) s /= static_cast<double>(orderings);
  return finish(game, std::move(sum));
}

ShapleyVector shapley_subset(const CoalitionGame& game) {
  const std::size_t n = game.n_players();
  const std::vector<double> w = weights_by_size(n);
  const std::uint32_t full = static_cast<std::uint32_t>(1u << n);
  std::vector<double> phi(n, 0.0);
  std::vector<double> terms;
  terms.reserve(full / 2);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t bit = std::uint32_t{1} << i;
    terms.clear();
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      if (mask & bit) continue;
      terms.push_back(w[std::popcount(mask)] *
                      (game.value(mask | bit) - game.value(mask)));
    }
    // Summing in magnitude order makes phi independent of player labels.
    std::sort(terms.begin(), terms.end(), [](double a, double b) {
      const double fa = std::abs(a), fb = std::abs(b);
      return fa != fb ? fa < fb : a < b;
    });
    double acc = 0.0;
    for (double t : terms) acc += t;
    phi[i] = acc;
  }
  return finish(game, std::move(phi));
}

RealMatrix shapley_weight_matrix(std::size_t n_players) {
  if (n_players == 0 || n_players > kMaxPlayers) {
    throw SizeLimitError("shapley_weight_matrix: player count must be in [1, " +
                         std::to_string(kMaxPlayers) + "]");
  }
  const std::vector<double> w = weights_by_size(n_players);
  const std::size_t columns = std::size_t{1} << n_players;
  RealMatrix a(n_players, columns);
  for (std::size_t i = 0; i < n_players; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t mask = 0; mask < columns; ++mask) {
      const std::size_t size = std::popcount(mask);
      a(i, mask) = (mask & bit) ? w[size - 1] : (size < n_players ? -w[size] : 0.0);
    }
  }
  return a;
}

ShapleyVector shapley_matrix(const CoalitionGame& game, std::size_t workers) {
  const std::size_t n = game.n_players();
  const RealMatrix a = shapley_weight_matrix(n);
  const auto values = game.structure_vector();
  const RealMatrix c_v(values.size(), 1,
                       std::vector<double>(values.begin(), values.end()));
  // One output row per tile; the 2^n inner dimension is walked in chunks.
  const RealMatrix phi = block_matmul(a, c_v, BlockSpec{1, 4096}, workers);
  return finish(game, std::vector<double>(phi.data().begin(), phi.data().end()));
}

CoalitionGame game_from_model(const DifferentiableModel& model,
                              std::span<const double> x,
                              std::span<const double> baseline,
                              std::size_t workers) {
  const std::size_t n = model.arity();
  if (x.size() != n || baseline.size() != n) {
    throw ShapeError("game_from_model: model arity " + std::to_string(n) +
                     ", input " + std::to_string(x.size()) + ", baseline " +
                     std::to_string(baseline.size()));
  }
  if (n == 0 || n > kMaxPlayers) {
    throw SizeLimitError("game_from_model: " + std::to_string(n) +
                         " features exceeds the cap of " +
                         std::to_string(kMaxPlayers) + " players");
  }
  const std::size_t masks = std::size_t{1} << n;
  std::vector<double> values(masks, 0.0);
  run_round_robin(masks, workers, [&](std::size_t mask) {
    std::vector<double> z(baseline.begin(), baseline.end());
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) z[i] = x[i];
    }
    try {
      values[mask] = model.evaluate(z);
    } catch (const std::exception& e) {
      throw Error("game_from_model: evaluation failed for mask " +
                  std::to_string(mask) + ": " + e.what());
    }
  });
  return CoalitionGame(n, std::move(values));
}

}  // namespace xaimat
