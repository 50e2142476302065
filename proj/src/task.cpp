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

#include "qpilot/task.hpp"

#include "qpilot/decompose.hpp"
#include "qpilot/mapper.hpp"

#include <algorithm>
#include <cmath>

namespace qpilot {

std::string_view task_type_name(TaskType t) {
  return t == TaskType::Calibration ? "calibration" : "general";
}

Seconds estimate_runtime(const Circuit& program, const TimingModel& timing) {
  const Circuit native = without_measurements(decompose_to_native(program));
  const double per_shot =
      static_cast<double>(native.gates.size()) * timing.gate_seconds +
      timing.measure_seconds;
  // Rounded to microseconds first so exact products do not round up.
  const double total =
      std::round(per_shot * static_cast<double>(timing.shots) * 1e6) / 1e6;
  return std::max<Seconds>(1, static_cast<Seconds>(std::ceil(total)));
}

QuantumTask make_general_task(TaskId id, Circuit program, Seconds submit_time,
                              const TimingModel& timing) {
  QuantumTask t;
  t.id = id;
  t.n_qubits_required = active_qubit_count(program);
  t.est_runtime = estimate_runtime(program, timing);
  t.program = std::move(program);
  t.submit_time = submit_time;
  return t;
}

}  // namespace qpilot
