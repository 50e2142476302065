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

#include "qpilot/circuit.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace qpilot {

/// One two-qubit gate of the source circuit together with the single-qubit
/// gates that ride along with it.
///
/// `before` holds single-qubit gates on either operand issued after the
/// previous two-qubit gate on that operand. `after` holds the trailing
/// single-qubit gates of an operand whose last two-qubit gate is this one.
struct DagVertex {
  std::size_t gate_index = 0;
  Gate gate;
  std::array<Qubit, 2> qubits{};
  std::vector<Gate> before;
  std::vector<Gate> after;
};

/// Dependency DAG over the two-qubit gates of a circuit. Vertex ids follow
/// program order, so the identity order is always topological.
struct GateDag {
  std::size_t n_qubits = 0;
  std::vector<DagVertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> successors;
  std::vector<std::vector<std::size_t>> predecessors;
  /// Gates on qubits that never take part in a two-qubit gate.
  std::vector<Gate> orphans;

  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
};

/// Builds the interaction DAG. Accepts circuits whose gates act on at most two
/// qubits; decompose Toffoli first. Measure gates are carried like
/// single-qubit gates.
GateDag build_interaction_dag(const Circuit& c);

bool is_acyclic(const GateDag& dag);

/// Re-emits the circuit for a topological `order` of the vertices, putting
/// every annotation back next to its vertex and the orphans at the end.
Circuit expand_dag(const GateDag& dag, std::span<const std::size_t> order);

}  // namespace qpilot
