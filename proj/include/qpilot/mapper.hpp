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
#include "qpilot/dag.hpp"
#include "qpilot/qpu.hpp"
#include "qpilot/token_swap.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpilot {

inline constexpr std::size_t kDefaultBeam = 64;

class MappingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A partial injective seating of logical qubits under which every covered
/// two-qubit gate lands on a coupling edge.
struct Embedding {
  Placement placement;
  /// Covered DAG vertices in emission order (a topological order).
  std::vector<std::size_t> vertices;
  /// Product of the fidelities of the covered gates and their annotations.
  double score = 1.0;
};

/// Alternative embeddings of one maximal DAG segment, best first. All
/// alternatives of a layer cover the same vertices in the same order.
using EmbeddingLayer = std::vector<Embedding>;

/// Splits the DAG into maximal embeddable segments.
///
/// Vertices are taken in in-degree-zero order. Each live candidate is
/// extended so the new gate lands on an edge: both operands already seated,
/// one seated and the other on a free neighbour, or both fresh on a free
/// edge. Candidates that cannot extend are dropped; when none extends with
/// any ready vertex the layer is sealed and a new one starts on the rest of
/// the DAG. At most `beam` candidates (highest partial score) survive a step.
/// Choosing one alternative per layer yields an embedding sequence covering
/// the whole DAG; an empty DAG yields no layers.
std::vector<EmbeddingLayer> embedding_sequences(const GateDag& dag,
                                                const DeviceView& device,
                                                std::size_t beam);

/// Embeddings joined by the swap routes between them. `routes[k]` carries
/// the full placement reached after embeddings[k] into embeddings[k + 1].
struct MappingPath {
  std::vector<Embedding> embeddings;
  std::vector<SwapRoute> routes;
  /// Seats of logicals outside the DAG (single-qubit-only or idle but read
  /// out); kUnplaced elsewhere.
  Placement orphan_seats;
  Placement final_placement;
  double fidelity_score = 1.0;
  std::size_t swap_count = 0;
};

struct MappedCircuit {
  /// Native circuit over physical qubits, ending in Measure gates on the
  /// seats of every read-out logical.
  Circuit circuit;
  Placement final_placement;
  double fidelity_score = 1.0;
  std::size_t swap_count = 0;
  MappingPath path;
  /// Physical qubits touched by any gate, ascending.
  std::vector<PhysicalQubit> footprint;
};

/// Product of per-gate fidelities of a native physical circuit: U3 at the
/// qubit's single-gate fidelity, CZ at its edge fidelity, Measure at the
/// measurement fidelity. Throws std::invalid_argument for a CZ off the
/// coupling graph or a non-native gate.
double circuit_fidelity(const Circuit& physical, const DeviceView& device);

/// Native gate product of one SWAP on edge {a, b}, oriented so the qubit with
/// the better single-gate fidelity takes the four extra U3s.
double swap_fidelity(const DeviceView& device, PhysicalQubit a, PhysicalQubit b);

/// Emits the physical circuit for `path` (embedding gates with their
/// annotations, decomposed SWAPs between segments, orphans, read-out).
Circuit emit_path(const MappingPath& path, const GateDag& dag,
                  const std::vector<Qubit>& readout, const DeviceView& device);

/// Fidelity score of the circuit emit_path produces.
double path_fidelity(const MappingPath& path, const GateDag& dag,
                     const std::vector<Qubit>& readout, const DeviceView& device);

/// Fidelity-aware mapping onto a connected device. The circuit is decomposed
/// to native gates first. Among the candidate paths the highest score wins,
/// then fewer swaps, then the lexicographically smallest final placement.
MappedCircuit map_circuit(const Circuit& c, const DeviceView& device,
                          std::size_t beam = kDefaultBeam);

/// Maps onto the free executable qubits of `qpu`, trying each connected
/// component large enough; qubit indices in the result are chip indices.
/// Throws MappingError when no component can host the circuit.
MappedCircuit map_circuit(const Circuit& c, const QpuModel& qpu,
                          std::size_t beam = kDefaultBeam);

std::optional<MappedCircuit> try_map_circuit(const Circuit& c,
                                             const QpuModel& qpu,
                                             std::size_t beam = kDefaultBeam);

/// Fidelity-blind baseline: logical i starts on physical i and the first
/// operand of each distant gate walks along a shortest path.
MappedCircuit map_naive(const Circuit& c, const DeviceView& device);

/// Logical qubits that need a seat (touched by a gate or read out).
std::size_t active_qubit_count(const Circuit& c);

/// Structured text dump of a mapping path, for golden-file comparison.
std::string dump_mapping_path(const MappingPath& path);

}  // namespace qpilot
