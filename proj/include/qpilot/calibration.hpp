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

#include "qpilot/qpu.hpp"
#include "qpilot/task.hpp"

#include <vector>

namespace qpilot {

struct CalibrationPolicy {
  bool enabled = true;
  double single_threshold = 0.98;  // single-gate and measurement
  double double_threshold = 0.95;
  Seconds interval_max = 3600;
  Seconds interval_min = 1200;
  Seconds interval_step = 1200;
  Seconds calib_duration = 300;  // per target qubit

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct FlaggedElements {
  std::vector<PhysicalQubit> qubits;
  /// Indices into the topology's edge list.
  std::vector<std::size_t> edges;

  bool empty() const { return qubits.empty() && edges.empty(); }
};

/// Qubit q is flagged when its single-gate or measurement fidelity is below
/// the single threshold; an edge when its two-gate fidelity is below the
/// double threshold.
FlaggedElements check_fidelities(const QpuModel& qpu, const CalibrationPolicy& policy);

struct CalibrationState {
  Seconds current_interval = 3600;
  Seconds next_check_time = 3600;
  /// Elements already covered by a queued or running calibration task.
  std::vector<bool> qubit_pending;
  std::vector<bool> edge_pending;
};

CalibrationState initial_calibration_state(const QpuModel& qpu,
                                           const CalibrationPolicy& policy,
                                           Seconds start);

/// Triggered checks reset the interval to its maximum; quiet checks shorten
/// it by one step down to the minimum.
void update_interval(CalibrationState& state, const CalibrationPolicy& policy,
                     bool triggered);

/// Drops elements that are already pending and marks the rest pending.
FlaggedElements claim_new(CalibrationState& state, const FlaggedElements& flagged);

/// Clears the pending marks of everything a finished calibration covered.
void release_pending(CalibrationState& state, const QpuModel& qpu,
                     const std::vector<PhysicalQubit>& targets);

/// Flagged qubits plus the endpoints of flagged edges, ascending.
std::vector<PhysicalQubit> calibration_targets(const QpuModel& qpu,
                                               const FlaggedElements& flagged);

/// Throws std::invalid_argument for an empty flag set.
QuantumTask build_calibration_task(const QpuModel& qpu, const FlaggedElements& flagged,
                                   const CalibrationPolicy& policy, Seconds now,
                                   TaskId id);

/// Restores each target's single-gate and measurement fidelity, and every
/// edge with both endpoints among the targets, to baseline times a factor
/// drawn uniformly from [0.998, 1] with the QPU's generator (clamped to 1).
/// Throws std::invalid_argument for a target outside the calibration region
/// and std::logic_error if a restored value misses its threshold.
void apply_calibration(QpuModel& qpu, const std::vector<PhysicalQubit>& targets,
                       const CalibrationPolicy& policy);

/// Throws std::invalid_argument when some baseline times the lowest restore
/// factor would miss its threshold, so calibration could not bring it back.
void check_restorable(const QpuModel& qpu, const CalibrationPolicy& policy);

}  // namespace qpilot
