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

#include "qpilot/topology.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace qpilot {

Topology::Topology(std::size_t n_qubits, std::vector<Edge> edges,
                   std::size_t min_qubits)
    : n_(n_qubits), adjacency_(n_qubits), edge_lookup_(n_qubits * n_qubits, -1) {
  if (n_ < std::max<std::size_t>(min_qubits, 1)) {
    throw std::invalid_argument("topology needs at least " +
                                std::to_string(std::max<std::size_t>(min_qubits, 1)) +
                                " qubit(s), got " + std::to_string(n_));
  }
  for (auto& e : edges) {
    const auto [a, b] = e;
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n_ ||
        static_cast<std::size_t>(b) >= n_) {
      throw std::invalid_argument("topology edge (" + std::to_string(a) + "," +
                                  std::to_string(b) + ") out of range");
    }
    if (a == b) {
      throw std::invalid_argument("topology self-loop on qubit " +
                                  std::to_string(a));
    }
    e = make_edge(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("topology has duplicate edges");
  }
  edges_ = std::move(edges);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto [a, b] = edges_[i];
    adjacency_[static_cast<std::size_t>(a)].push_back(b);
    adjacency_[static_cast<std::size_t>(b)].push_back(a);
    edge_lookup_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)] =
        static_cast<int>(i);
    edge_lookup_[static_cast<std::size_t>(b) * n_ + static_cast<std::size_t>(a)] =
        static_cast<int>(i);
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
  }

  distance_.assign(n_ * n_, -1);
  for (std::size_t src = 0; src < n_; ++src) {
    int* row = &distance_[src * n_];
    row[src] = 0;
    std::deque<std::size_t> queue{src};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (PhysicalQubit v : adjacency_[u]) {
        const auto vi = static_cast<std::size_t>(v);
        if (row[vi] < 0) {
          row[vi] = row[u] + 1;
          queue.push_back(vi);
        }
      }
    }
    if (std::find(row, row + n_, -1) != row + n_) {
      throw std::invalid_argument("topology is disconnected");
    }
  }
}

std::optional<std::size_t> Topology::edge_index(PhysicalQubit a,
                                                PhysicalQubit b) const {
  if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n_ ||
      static_cast<std::size_t>(b) >= n_) {
    return std::nullopt;
  }
  const int idx =
      edge_lookup_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
  if (idx < 0) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(idx);
}

Topology make_grid(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  const auto id = [rows](std::size_t r, std::size_t c) {
    return static_cast<PhysicalQubit>(c * rows + r);
  };
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) {
      if (r + 1 < rows) {
        edges.push_back(make_edge(id(r, c), id(r + 1, c)));
      }
      if (c + 1 < cols) {
        edges.push_back(make_edge(id(r, c), id(r, c + 1)));
      }
    }
  }
  return Topology(rows * cols, std::move(edges));
}

Topology make_line(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.push_back(make_edge(static_cast<PhysicalQubit>(i),
                              static_cast<PhysicalQubit>(i + 1)));
  }
  return Topology(n, std::move(edges));
}

Topology make_ring(std::size_t n) {
  if (n < 3) {
    return make_line(n);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back(make_edge(static_cast<PhysicalQubit>(i),
                              static_cast<PhysicalQubit>((i + 1) % n)));
  }
  return Topology(n, std::move(edges));
}

std::vector<std::vector<PhysicalQubit>> induced_components(
    const Topology& topo, const std::vector<bool>& mask) {
  std::vector<std::vector<PhysicalQubit>> out;
  std::vector<bool> seen(topo.size(), false);
  for (std::size_t start = 0; start < topo.size(); ++start) {
    if (!mask[start] || seen[start]) {
      continue;
    }
    std::vector<PhysicalQubit> comp;
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      comp.push_back(static_cast<PhysicalQubit>(u));
      for (PhysicalQubit v : topo.neighbors(static_cast<PhysicalQubit>(u))) {
        const auto vi = static_cast<std::size_t>(v);
        if (mask[vi] && !seen[vi]) {
          seen[vi] = true;
          queue.push_back(vi);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

Topology induced_topology(const Topology& topo,
                          const std::vector<PhysicalQubit>& members) {
  std::vector<int> local(topo.size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    local[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (const auto& [a, b] : topo.edges()) {
    const int la = local[static_cast<std::size_t>(a)];
    const int lb = local[static_cast<std::size_t>(b)];
    if (la >= 0 && lb >= 0) {
      edges.push_back(make_edge(la, lb));
    }
  }
  return Topology(members.size(), std::move(edges));
}

}  // namespace qpilot
