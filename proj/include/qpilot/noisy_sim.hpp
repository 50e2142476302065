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
#include "qpilot/qpu.hpp"
#include "qpilot/token_swap.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace qpilot {

inline constexpr std::size_t kMaxSimQubits = 10;

/// Depolarizing and read-out flip probabilities per element.
struct NoiseSpec {
  std::vector<double> single_gate;
  std::map<Edge, double> two_gate;
  std::vector<double> measure_flip;

  /// Zero noise everywhere, with an entry for every qubit pair.
  static NoiseSpec none(std::size_t n_qubits);
  /// The noise seen by qubits `members` (members[i] becomes qubit i).
  NoiseSpec restrict(const std::vector<PhysicalQubit>& members) const;
};

/// p = 1 - fidelity for every element.
NoiseSpec noise_from_device(const DeviceView& device);
NoiseSpec noise_from_qpu(const QpuModel& qpu);

/// Probabilities over the read-out qubits, ascending. Bitstring index bit
/// (m - 1 - k) is the outcome of qubits[k], so qubits[0] is the leftmost
/// character.
struct Distribution {
  std::vector<Qubit> qubits;
  std::vector<double> probs;

  std::string bitstring(std::size_t index) const;
};

struct DensityState {
  std::size_t n_qubits = 0;
  Eigen::MatrixXcd rho;
};

struct SimResult {
  DensityState state;
  Distribution distribution;
  /// Largest |tr(rho) - 1| seen after any step.
  double max_trace_deviation = 0.0;
};

/// Pure-state evolution from |0...0>. Qubit 0 is the most significant bit.
/// Throws std::invalid_argument for a non-native gate or more than
/// kMaxSimQubits qubits.
Eigen::VectorXcd simulate_statevector(const Circuit& c);

SimResult simulate_ideal(const Circuit& c);

/// Applies depolarizing noise on the operands after every U3 and CZ and
/// independent classical bit flips at read-out. Full distribution, no
/// sampling. Throws std::runtime_error if the trace leaves 1 by more than
/// 1e-9 after any step.
SimResult simulate_noisy(const Circuit& c, const NoiseSpec& noise);

/// <psi| rho |psi>. Throws std::invalid_argument on dimension mismatch.
double state_fidelity(const Eigen::VectorXcd& psi, const DensityState& rho);

/// Half the L1 distance. Throws std::invalid_argument on size mismatch.
double tv_distance(const Distribution& a, const Distribution& b);

/// Read-out marginal of a diagonal, with per-qubit flip probabilities.
Distribution readout_distribution(const Eigen::VectorXd& diagonal,
                                  std::size_t n_qubits,
                                  const std::vector<Qubit>& qubits,
                                  const std::vector<double>& flip);

/// Qubits read out by `c`: its Measure targets, or all qubits if it has none.
std::vector<Qubit> readout_of(const Circuit& c);

struct EquivalenceResult {
  bool pass = false;
  double tv_distance = 0.0;
};

/// Simulates both circuits noiselessly (the original after native
/// decomposition) and compares the original's distribution with the mapped
/// one relabelled through `final_placement` (logical -> physical).
EquivalenceResult assert_equivalent(const Circuit& original, const Circuit& mapped,
                                    const Placement& final_placement);

/// A circuit restricted to the qubits it touches, renumbered in ascending
/// order; `qubits[i]` is the original index of compact qubit i.
struct CompactCircuit {
  Circuit circuit;
  std::vector<Qubit> qubits;
};

CompactCircuit compact_circuit(const Circuit& c);

/// CSV with header "bitstring,probability".
std::string distribution_csv(const Distribution& d);

}  // namespace qpilot
