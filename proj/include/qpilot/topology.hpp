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

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace qpilot {

using PhysicalQubit = int;

/// Undirected coupling edge, stored with first < second.
using Edge = std::pair<PhysicalQubit, PhysicalQubit>;

inline Edge make_edge(PhysicalQubit a, PhysicalQubit b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

/// Connected coupling graph with cached all-pairs hop distances.
class Topology {
 public:
  /// Throws std::invalid_argument on self-loops, duplicate or out-of-range
  /// edges, fewer than `min_qubits` qubits, or a disconnected graph.
  Topology(std::size_t n_qubits, std::vector<Edge> edges,
           std::size_t min_qubits = 1);

  std::size_t size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<PhysicalQubit>& neighbors(PhysicalQubit q) const {
    return adjacency_[static_cast<std::size_t>(q)];
  }
  int distance(PhysicalQubit a, PhysicalQubit b) const {
    return distance_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
  }
  bool adjacent(PhysicalQubit a, PhysicalQubit b) const {
    return edge_index(a, b).has_value();
  }
  /// Index into edges() of the edge {a, b}, if coupled.
  std::optional<std::size_t> edge_index(PhysicalQubit a, PhysicalQubit b) const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<PhysicalQubit>> adjacency_;
  std::vector<int> distance_;
  std::vector<int> edge_lookup_;
};

/// rows x cols grid, numbered column-major (q = col * rows + row), so the
/// lower half of the indices is the left half of the chip.
Topology make_grid(std::size_t rows, std::size_t cols);
Topology make_line(std::size_t n);
Topology make_ring(std::size_t n);

/// Connected components of the subgraph induced by `mask`, each listed in
/// ascending order; components are ordered by their smallest qubit.
std::vector<std::vector<PhysicalQubit>> induced_components(
    const Topology& topo, const std::vector<bool>& mask);

/// Subgraph induced by `members` (which must be connected), relabelled so
/// that members[i] becomes qubit i.
Topology induced_topology(const Topology& topo,
                          const std::vector<PhysicalQubit>& members);

}  // namespace qpilot
