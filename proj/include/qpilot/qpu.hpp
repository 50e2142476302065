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

#include "qpilot/topology.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qpilot {

/// Simulated time, whole seconds.
using Seconds = std::int64_t;

/// Per-element fidelities. `two_gate` is indexed like Topology::edges().
struct FidelityState {
  std::vector<double> single_gate;
  std::vector<double> two_gate;
  std::vector<double> measure;
  std::vector<double> single_baseline;
  std::vector<double> two_baseline;
  std::vector<double> measure_baseline;
  Seconds last_update = 0;
};

struct ElementDrift {
  double tau = 86400.0;  // relaxation time constant, seconds
  double floor = 0.5;    // asymptotic fidelity
};

/// Drift law per step of length dt:
///   f <- floor + (f - floor) * exp(-dt / tau),
///   f <- clamp(f * exp(jitter_sigma * N(0, 1)), floor, 1).
struct DriftParams {
  ElementDrift single;
  ElementDrift two;
  ElementDrift measure;
  double jitter_sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Initial fidelities, already resolved to one value per element.
struct FidelitySpec {
  std::vector<double> single_gate;
  std::vector<double> two_gate;
  std::vector<double> measure;

  static FidelitySpec uniform(const Topology& topo, double single, double two,
                              double measure);
  /// Qubits with index < n/2 get the `left_*` values; an edge counts as right
  /// only when both endpoints are right.
  static FidelitySpec split(const Topology& topo, double left_single,
                            double right_single, double left_two,
                            double right_two, double left_measure,
                            double right_measure);
};

enum class QubitStatus { Free, Busy, Calibrating };

struct QpuModel {
  std::string id;
  Topology topology;
  FidelityState fidelity;
  DriftParams drift;
  std::vector<QubitStatus> status;
  /// true = calibration region; the executable region is the complement.
  std::vector<bool> in_calibration;
  std::mt19937_64 rng;

  std::size_t size() const { return topology.size(); }
};

/// Fidelities of a coupled set of qubits, in the form the mapper consumes.
struct DeviceView {
  Topology topology;
  std::vector<double> single_gate;
  std::vector<double> two_gate;
  std::vector<double> measure;

  double edge_fidelity(PhysicalQubit a, PhysicalQubit b) const;
};

/// Throws std::invalid_argument for topologies under two qubits, spec sizes
/// that do not match the topology, fidelities outside [0, 1] or below their
/// drift floor, and drift parameters with tau <= 0 or floor outside [0, 1).
QpuModel build_qpu(std::string id, Topology topology, const FidelitySpec& fid,
                   const DriftParams& drift);

void apply_drift(QpuModel& qpu, Seconds dt);

/// Makes `targets` the calibration region (and marks them calibrating).
/// Targets must be free and no calibration may be in progress.
void partition_regions(QpuModel& qpu, std::span<const PhysicalQubit> targets);

/// Grants the qubits iff all are free and executable; returns false (and
/// changes nothing) otherwise.
bool allocate_qubits(QpuModel& qpu, std::span<const PhysicalQubit> qubits);

/// Frees busy or calibrating qubits; calibrating ones rejoin the executable
/// region. Releasing a free qubit throws std::logic_error.
void release_qubits(QpuModel& qpu, std::span<const PhysicalQubit> qubits);

std::vector<PhysicalQubit> executable_region(const QpuModel& qpu);
std::vector<PhysicalQubit> calibration_region(const QpuModel& qpu);

/// Mask of qubits that are free and in the executable region.
std::vector<bool> free_executable_mask(const QpuModel& qpu);
std::size_t count_free_executable(const QpuModel& qpu);

DeviceView device_view(const QpuModel& qpu);
/// View of the subgraph induced by `members` (connected), relabelled so that
/// members[i] is local qubit i.
DeviceView device_view(const QpuModel& qpu,
                       const std::vector<PhysicalQubit>& members);

}  // namespace qpilot
