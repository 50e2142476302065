// Copyright 2026 The qpilot Authors
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

#include "oracles.hpp"
#include "qpilot/token_swap.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

namespace qpilot {
namespace {

/// Where each token ends up after the swaps: result[v] = destination carried
/// by the token now on v.
std::vector<PhysicalQubit> carry(std::vector<PhysicalQubit> tokens, const SwapRoute& route) {
  for (const Edge& e : route) {
    std::swap(tokens[static_cast<std::size_t>(e.first)], tokens[static_cast<std::size_t>(e.second)]);
  }
  return tokens;
}

bool sorted(const std::vector<PhysicalQubit>& tokens) {
  for (std::size_t v = 0; v < tokens.size(); ++v) {
    if (tokens[v] != kUnplaced && tokens[v] != static_cast<PhysicalQubit>(v)) {
      return false;
    }
  }
  return true;
}

TEST(TokenSwap, IdentityNeedsNoSwaps) {
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<PhysicalQubit> id(n);
    std::iota(id.begin(), id.end(), 0);
    for (const Topology& t : oracle::connected_graphs(n)) {
      EXPECT_TRUE(route_tokens(id, t).empty());
    }
  }
}

TEST(TokenSwap, RoutesAreValidAndWithinFourTimesOptimal) {
  std::mt19937_64 rng(51);
  const auto graphs = oracle::connected_graphs(5);
  for (int rep = 0; rep < 400; ++rep) {
    const Topology& t = graphs[rng() % graphs.size()];
    std::vector<PhysicalQubit> dest(5);
    std::iota(dest.begin(), dest.end(), 0);
    std::shuffle(dest.begin(), dest.end(), rng);
    const SwapRoute r = route_tokens(dest, t);
    ASSERT_TRUE(route_is_valid(r, t));
    ASSERT_TRUE(sorted(carry(dest, r)));
    EXPECT_LE(static_cast<int>(r.size()), 4 * oracle::token_swap_optimum(t, dest));
  }
}

TEST(TokenSwap, OptimalOnAPathTranspositionOfNeighbours) {
  const Topology line = make_line(4);
  EXPECT_EQ(route_tokens({1, 0, 2, 3}, line).size(), 1U);
  EXPECT_EQ(oracle::token_swap_optimum(line, {3, 2, 1, 0}), 6);
}

TEST(TokenSwap, WildcardsMayEndAnywhere) {
  std::mt19937_64 rng(52);
  const Topology g = make_grid(2, 3);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<PhysicalQubit> dest(6);
    std::iota(dest.begin(), dest.end(), 0);
    std::shuffle(dest.begin(), dest.end(), rng);
    for (auto& d : dest) {
      if (rng() % 3 == 0) {
        d = kUnplaced;
      }
    }
    const SwapRoute r = route_tokens(dest, g);
    ASSERT_TRUE(route_is_valid(r, g));
    EXPECT_TRUE(sorted(carry(dest, r)));
  }
}

TEST(TokenSwap, RejectsDuplicateDestinations) {
  EXPECT_THROW(route_tokens({1, 1, 2}, make_line(3)), std::invalid_argument);
}

TEST(TokenSwap, PlacementRouteMovesSharedLogicals) {
  std::mt19937_64 rng(53);
  const Topology g = make_grid(2, 4);
  for (int rep = 0; rep < 300; ++rep) {
    std::vector<PhysicalQubit> seats(8);
    std::iota(seats.begin(), seats.end(), 0);
    std::shuffle(seats.begin(), seats.end(), rng);
    Placement from(5, kUnplaced);
    Placement to(5, kUnplaced);
    for (std::size_t l = 0; l < 5; ++l) {
      if (rng() % 4 != 0) {
        from[l] = seats[l];
      }
    }
    std::shuffle(seats.begin(), seats.end(), rng);
    for (std::size_t l = 0; l < 5; ++l) {
      if (rng() % 4 != 0) {
        to[l] = seats[l];
      }
    }
    const SwapRoute r = token_swap_route(from, to, g);
    ASSERT_TRUE(route_is_valid(r, g));
    const Placement moved = apply_route(from, r);
    for (std::size_t l = 0; l < 5; ++l) {
      if (from[l] != kUnplaced && to[l] != kUnplaced) {
        EXPECT_EQ(moved[l], to[l]);
      }
      if (from[l] == kUnplaced) {
        EXPECT_EQ(moved[l], kUnplaced);
      }
    }
    // Seats requested by newly placed logicals end up empty.
    for (std::size_t l = 0; l < 5; ++l) {
      if (from[l] == kUnplaced && to[l] != kUnplaced) {
        EXPECT_EQ(std::count(moved.begin(), moved.end(), to[l]), 0);
      }
    }
  }
}

TEST(TokenSwap, PlacementRouteValidatesInput) {
  const Topology g = make_line(3);
  EXPECT_THROW(token_swap_route({0, 1}, {0}, g), std::invalid_argument);
  EXPECT_THROW(token_swap_route({0, 0}, {0, 1}, g), std::invalid_argument);
  EXPECT_THROW(token_swap_route({0, 5}, {0, 1}, g), std::invalid_argument);
}

TEST(TokenSwap, ValidityChecksEdges) {
  const Topology g = make_line(3);
  EXPECT_TRUE(route_is_valid({{0, 1}, {1, 2}}, g));
  EXPECT_FALSE(route_is_valid({{0, 2}}, g));
}

}  // namespace
}  // namespace qpilot
