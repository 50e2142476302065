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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qpilot {

using TaskId = std::uint64_t;
using TransactionId = std::uint64_t;

enum class TaskType { General, Calibration };

std::string_view task_type_name(TaskType t);

struct QuantumTask {
  TaskId id = 0;
  std::size_t n_qubits_required = 0;
  Circuit program;
  /// Fixed processor; general tasks without one go through QPU selection.
  std::optional<std::string> qpu_id;
  TaskType task_type = TaskType::General;
  /// Calibration outranks general work; within general tasks HRRN decides.
  int priority = 0;
  Seconds submit_time = 0;
  Seconds est_runtime = 1;
  /// Calibration targets.
  std::vector<PhysicalQubit> explicit_qubits;
};

/// Execution time model: every gate and the final read-out take a fixed
/// duration, repeated for each shot.
struct TimingModel {
  double gate_seconds = 0.001;
  double measure_seconds = 0.001;
  std::size_t shots = 1000;
};

/// ceil((native gate count * gate + measure) * shots), at least 1 second.
Seconds estimate_runtime(const Circuit& program, const TimingModel& timing = {});

/// A general task for `program`, sized by its active qubits and timed by
/// `timing`.
QuantumTask make_general_task(TaskId id, Circuit program, Seconds submit_time,
                              const TimingModel& timing = {});

}  // namespace qpilot
