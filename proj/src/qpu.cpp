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

#include "qpilot/qpu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpilot {
namespace {

void check_range(const std::vector<double>& values, const char* what,
                 double floor) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = values[i];
    if (!(f >= 0.0 && f <= 1.0)) {
      throw std::invalid_argument(std::string(what) + " fidelity " +
                                  std::to_string(f) + " of element " +
                                  std::to_string(i) + " is outside [0, 1]");
    }
    if (f < floor) {
      throw std::invalid_argument(std::string(what) + " fidelity " +
                                  std::to_string(f) + " of element " +
                                  std::to_string(i) + " is below its drift floor " +
                                  std::to_string(floor));
    }
  }
}

void check_drift(const ElementDrift& d, const char* what) {
  if (!(d.tau > 0.0)) {
    throw std::invalid_argument(std::string(what) + " drift tau must be > 0");
  }
  if (!(d.floor >= 0.0 && d.floor < 1.0)) {
    throw std::invalid_argument(std::string(what) +
                                " drift floor must be in [0, 1)");
  }
}

void check_qubit(const QpuModel& qpu, PhysicalQubit q) {
  if (q < 0 || static_cast<std::size_t>(q) >= qpu.size()) {
    throw std::out_of_range("qubit " + std::to_string(q) + " not on " + qpu.id);
  }
}

void drift_values(std::vector<double>& values, const ElementDrift& d, double dt,
                  double sigma, std::mt19937_64& rng) {
  const double decay = std::exp(-dt / d.tau);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& f : values) {
    f = d.floor + (f - d.floor) * decay;
    if (sigma > 0.0) {
      f *= std::exp(sigma * normal(rng));
    }
    f = std::clamp(f, d.floor, 1.0);
  }
}

}  // namespace

FidelitySpec FidelitySpec::uniform(const Topology& topo, double single,
                                   double two, double measure) {
  return {std::vector<double>(topo.size(), single),
          std::vector<double>(topo.edges().size(), two),
          std::vector<double>(topo.size(), measure)};
}

FidelitySpec FidelitySpec::split(const Topology& topo, double left_single,
                                 double right_single, double left_two,
                                 double right_two, double left_measure,
                                 double right_measure) {
  const auto half = static_cast<PhysicalQubit>(topo.size() / 2);
  FidelitySpec spec;
  for (std::size_t q = 0; q < topo.size(); ++q) {
    const bool right = static_cast<PhysicalQubit>(q) >= half;
    spec.single_gate.push_back(right ? right_single : left_single);
    spec.measure.push_back(right ? right_measure : left_measure);
  }
  for (const auto& [a, b] : topo.edges()) {
    spec.two_gate.push_back(a >= half && b >= half ? right_two : left_two);
  }
  return spec;
}

double DeviceView::edge_fidelity(PhysicalQubit a, PhysicalQubit b) const {
  const auto idx = topology.edge_index(a, b);
  if (!idx) {
    throw std::invalid_argument("no coupling between qubits " +
                                std::to_string(a) + " and " + std::to_string(b));
  }
  return two_gate[*idx];
}

QpuModel build_qpu(std::string id, Topology topology, const FidelitySpec& fid,
                   const DriftParams& drift) {
  if (topology.size() < 2) {
    throw std::invalid_argument("QPU " + id + " needs at least 2 qubits");
  }
  if (fid.single_gate.size() != topology.size() ||
      fid.measure.size() != topology.size() ||
      fid.two_gate.size() != topology.edges().size()) {
    throw std::invalid_argument("QPU " + id +
                                ": fidelity spec does not match the topology");
  }
  check_drift(drift.single, "single-gate");
  check_drift(drift.two, "two-gate");
  check_drift(drift.measure, "measurement");
  if (drift.jitter_sigma < 0.0) {
    throw std::invalid_argument("drift jitter_sigma must be >= 0");
  }
  check_range(fid.single_gate, "single-gate", drift.single.floor);
  check_range(fid.two_gate, "two-gate", drift.two.floor);
  check_range(fid.measure, "measurement", drift.measure.floor);

  const std::size_t n = topology.size();
  FidelityState state{fid.single_gate, fid.two_gate, fid.measure,
                      fid.single_gate, fid.two_gate, fid.measure, 0};
  return QpuModel{std::move(id),
                  std::move(topology),
                  std::move(state),
                  drift,
                  std::vector<QubitStatus>(n, QubitStatus::Free),
                  std::vector<bool>(n, false),
                  std::mt19937_64(drift.seed)};
}

void apply_drift(QpuModel& qpu, Seconds dt) {
  if (dt < 0) {
    throw std::invalid_argument("apply_drift: negative time step");
  }
  if (dt == 0) {
    return;
  }
  const auto t = static_cast<double>(dt);
  auto& f = qpu.fidelity;
  drift_values(f.single_gate, qpu.drift.single, t, qpu.drift.jitter_sigma, qpu.rng);
  drift_values(f.two_gate, qpu.drift.two, t, qpu.drift.jitter_sigma, qpu.rng);
  drift_values(f.measure, qpu.drift.measure, t, qpu.drift.jitter_sigma, qpu.rng);
  f.last_update += dt;
}

void partition_regions(QpuModel& qpu, std::span<const PhysicalQubit> targets) {
  for (PhysicalQubit q : targets) {
    check_qubit(qpu, q);
    if (qpu.status[static_cast<std::size_t>(q)] != QubitStatus::Free) {
      throw std::logic_error("partition_regions: qubit " + std::to_string(q) +
                             " on " + qpu.id + " is not free");
    }
  }
  if (std::find(qpu.in_calibration.begin(), qpu.in_calibration.end(), true) !=
      qpu.in_calibration.end()) {
    throw std::logic_error("partition_regions: calibration already in progress on " +
                           qpu.id);
  }
  for (PhysicalQubit q : targets) {
    qpu.in_calibration[static_cast<std::size_t>(q)] = true;
    qpu.status[static_cast<std::size_t>(q)] = QubitStatus::Calibrating;
  }
}

bool allocate_qubits(QpuModel& qpu, std::span<const PhysicalQubit> qubits) {
  std::vector<bool> requested(qpu.size(), false);
  for (PhysicalQubit q : qubits) {
    if (q < 0 || static_cast<std::size_t>(q) >= qpu.size()) {
      return false;
    }
    const auto i = static_cast<std::size_t>(q);
    if (requested[i] || qpu.status[i] != QubitStatus::Free || qpu.in_calibration[i]) {
      return false;
    }
    requested[i] = true;
  }
  for (PhysicalQubit q : qubits) {
    qpu.status[static_cast<std::size_t>(q)] = QubitStatus::Busy;
  }
  return true;
}

void release_qubits(QpuModel& qpu, std::span<const PhysicalQubit> qubits) {
  for (PhysicalQubit q : qubits) {
    check_qubit(qpu, q);
    if (qpu.status[static_cast<std::size_t>(q)] == QubitStatus::Free) {
      throw std::logic_error("release_qubits: qubit " + std::to_string(q) +
                             " on " + qpu.id + " is already free");
    }
  }
  for (PhysicalQubit q : qubits) {
    const auto i = static_cast<std::size_t>(q);
    qpu.status[i] = QubitStatus::Free;
    qpu.in_calibration[i] = false;
  }
}

std::vector<PhysicalQubit> executable_region(const QpuModel& qpu) {
  std::vector<PhysicalQubit> out;
  for (std::size_t q = 0; q < qpu.size(); ++q) {
    if (!qpu.in_calibration[q]) {
      out.push_back(static_cast<PhysicalQubit>(q));
    }
  }
  return out;
}

std::vector<PhysicalQubit> calibration_region(const QpuModel& qpu) {
  std::vector<PhysicalQubit> out;
  for (std::size_t q = 0; q < qpu.size(); ++q) {
    if (qpu.in_calibration[q]) {
      out.push_back(static_cast<PhysicalQubit>(q));
    }
  }
  return out;
}

std::vector<bool> free_executable_mask(const QpuModel& qpu) {
  std::vector<bool> mask(qpu.size());
  for (std::size_t q = 0; q < qpu.size(); ++q) {
    mask[q] = qpu.status[q] == QubitStatus::Free && !qpu.in_calibration[q];
  }
  return mask;
}

std::size_t count_free_executable(const QpuModel& qpu) {
  const auto mask = free_executable_mask(qpu);
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

DeviceView device_view(const QpuModel& qpu) {
  return {qpu.topology, qpu.fidelity.single_gate, qpu.fidelity.two_gate,
          qpu.fidelity.measure};
}

DeviceView device_view(const QpuModel& qpu,
                       const std::vector<PhysicalQubit>& members) {
  Topology sub = induced_topology(qpu.topology, members);
  std::vector<double> single;
  std::vector<double> measure;
  for (PhysicalQubit q : members) {
    single.push_back(qpu.fidelity.single_gate[static_cast<std::size_t>(q)]);
    measure.push_back(qpu.fidelity.measure[static_cast<std::size_t>(q)]);
  }
  std::vector<double> two;
  for (const auto& [a, b] : sub.edges()) {
    const auto idx = qpu.topology.edge_index(members[static_cast<std::size_t>(a)],
                                             members[static_cast<std::size_t>(b)]);
    two.push_back(qpu.fidelity.two_gate[*idx]);
  }
  return {std::move(sub), std::move(single), std::move(two), std::move(measure)};
}

}  // namespace qpilot
