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
#include "qpilot/topology.hpp"

#include <gtest/gtest.h>

#include <deque>

namespace qpilot {
namespace {

int bfs_distance(const Topology& t, PhysicalQubit a, PhysicalQubit b) {
  std::vector<int> dist(t.size(), -1);
  std::deque<PhysicalQubit> q{a};
  dist[static_cast<std::size_t>(a)] = 0;
  while (!q.empty()) {
    const PhysicalQubit u = q.front();
    q.pop_front();
    for (const Edge& e : t.edges()) {
      PhysicalQubit v = -1;
      if (e.first == u) {
        v = e.second;
      } else if (e.second == u) {
        v = e.first;
      }
      if (v >= 0 && dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push_back(v);
      }
    }
  }
  return dist[static_cast<std::size_t>(b)];
}

TEST(Topology, GridIsColumnMajor) {
  const Topology g = make_grid(2, 4);
  EXPECT_EQ(g.size(), 8U);
  EXPECT_EQ(g.edges().size(), 10U);
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_TRUE(g.adjacent(0, 2));
  EXPECT_FALSE(g.adjacent(1, 2));
  EXPECT_EQ(g.distance(0, 7), 4);
}

TEST(Topology, DistancesMatchBreadthFirstSearch) {
  for (std::size_t n = 2; n <= 5; ++n) {
    for (const Topology& t : oracle::connected_graphs(n)) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          const auto pa = static_cast<PhysicalQubit>(a);
          const auto pb = static_cast<PhysicalQubit>(b);
          ASSERT_EQ(t.distance(pa, pb), bfs_distance(t, pa, pb));
        }
      }
    }
  }
}

TEST(Topology, ConnectedGraphCounts) {
  // Labelled connected graphs on 1..5 vertices: 1, 1, 4, 38, 728.
  EXPECT_EQ(oracle::connected_graphs(3).size(), 4U);
  EXPECT_EQ(oracle::connected_graphs(4).size(), 38U);
  EXPECT_EQ(oracle::connected_graphs(5).size(), 728U);
}

TEST(Topology, EdgeIndexAndNeighbors) {
  const Topology t(4, {{2, 1}, {0, 1}, {3, 2}});
  EXPECT_EQ(t.edges().front(), (Edge{0, 1}));
  for (std::size_t i = 0; i < t.edges().size(); ++i) {
    const auto [a, b] = t.edges()[i];
    EXPECT_EQ(t.edge_index(a, b), i);
    EXPECT_EQ(t.edge_index(b, a), i);
  }
  EXPECT_FALSE(t.edge_index(0, 3).has_value());
  EXPECT_EQ(t.neighbors(1).size(), 2U);
}

TEST(Topology, RejectsMalformedGraphs) {
  EXPECT_THROW(Topology(3, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(Topology(2, {{0, 0}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(Topology(2, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(Topology(2, {{0, 2}}), std::invalid_argument);
  EXPECT_THROW(Topology(1, {}, 2), std::invalid_argument);
}

TEST(Topology, RingAndLine) {
  EXPECT_EQ(make_ring(5).edges().size(), 5U);
  EXPECT_EQ(make_ring(5).distance(0, 3), 2);
  EXPECT_EQ(make_line(5).distance(0, 4), 4);
}

TEST(Topology, InducedComponentsAndSubgraphs) {
  const Topology g = make_grid(2, 4);
  std::vector<bool> mask(8, true);
  mask[2] = mask[3] = false;
  const auto comps = induced_components(g, mask);
  ASSERT_EQ(comps.size(), 2U);
  EXPECT_EQ(comps[0], (std::vector<PhysicalQubit>{0, 1}));
  EXPECT_EQ(comps[1], (std::vector<PhysicalQubit>{4, 5, 6, 7}));
  const Topology sub = induced_topology(g, comps[1]);
  EXPECT_EQ(sub.size(), 4U);
  EXPECT_EQ(sub.edges().size(), 4U);
  EXPECT_THROW(induced_topology(g, {0, 7}), std::invalid_argument);
}

}  // namespace
}  // namespace qpilot
