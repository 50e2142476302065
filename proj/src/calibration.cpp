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

#include "qpilot/calibration.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace qpilot {
namespace {

constexpr double kRestoreLow = 0.998;

double restore(double baseline, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> factor(kRestoreLow, 1.0);
  return std::min(1.0, baseline * factor(rng));
}

void require_threshold(double value, double threshold, const std::string& what) {
  if (value < threshold) {
    throw std::logic_error("calibration restored " + what + " to " +
                           std::to_string(value) + ", below threshold " +
                           std::to_string(threshold));
  }
}

}  // namespace

void CalibrationPolicy::validate() const {
  if (!(single_threshold > 0.0 && single_threshold < 1.0)) {
    throw std::invalid_argument("single_threshold must be in (0, 1)");
  }
  if (!(double_threshold > 0.0 && double_threshold < 1.0)) {
    throw std::invalid_argument("double_threshold must be in (0, 1)");
  }
  if (interval_min <= 0 || interval_min > interval_max) {
    throw std::invalid_argument("interval_min must be in (0, interval_max]");
  }
  if (interval_step <= 0) {
    throw std::invalid_argument("interval_step must be > 0");
  }
  if (calib_duration <= 0) {
    throw std::invalid_argument("calib_duration must be > 0");
  }
}

FlaggedElements check_fidelities(const QpuModel& qpu, const CalibrationPolicy& policy) {
  FlaggedElements out;
  const auto& f = qpu.fidelity;
  for (std::size_t q = 0; q < qpu.size(); ++q) {
    if (f.single_gate[q] < policy.single_threshold ||
        f.measure[q] < policy.single_threshold) {
      out.qubits.push_back(static_cast<PhysicalQubit>(q));
    }
  }
  for (std::size_t e = 0; e < f.two_gate.size(); ++e) {
    if (f.two_gate[e] < policy.double_threshold) {
      out.edges.push_back(e);
    }
  }
  return out;
}

CalibrationState initial_calibration_state(const QpuModel& qpu,
                                           const CalibrationPolicy& policy,
                                           Seconds start) {
  return {policy.interval_max, start + policy.interval_max,
          std::vector<bool>(qpu.size(), false),
          std::vector<bool>(qpu.topology.edges().size(), false)};
}

void update_interval(CalibrationState& state, const CalibrationPolicy& policy,
                     bool triggered) {
  if (triggered) {
    state.current_interval = policy.interval_max;
  } else {
    state.current_interval =
        std::max(policy.interval_min, state.current_interval - policy.interval_step);
  }
}

FlaggedElements claim_new(CalibrationState& state, const FlaggedElements& flagged) {
  FlaggedElements out;
  for (PhysicalQubit q : flagged.qubits) {
    if (!state.qubit_pending[static_cast<std::size_t>(q)]) {
      state.qubit_pending[static_cast<std::size_t>(q)] = true;
      out.qubits.push_back(q);
    }
  }
  for (std::size_t e : flagged.edges) {
    if (!state.edge_pending[e]) {
      state.edge_pending[e] = true;
      out.edges.push_back(e);
    }
  }
  return out;
}

void release_pending(CalibrationState& state, const QpuModel& qpu,
                     const std::vector<PhysicalQubit>& targets) {
  std::set<PhysicalQubit> t(targets.begin(), targets.end());
  for (PhysicalQubit q : t) {
    state.qubit_pending[static_cast<std::size_t>(q)] = false;
  }
  const auto& edges = qpu.topology.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (t.count(edges[e].first) != 0 && t.count(edges[e].second) != 0) {
      state.edge_pending[e] = false;
    }
  }
}

std::vector<PhysicalQubit> calibration_targets(const QpuModel& qpu,
                                               const FlaggedElements& flagged) {
  std::set<PhysicalQubit> t(flagged.qubits.begin(), flagged.qubits.end());
  for (std::size_t e : flagged.edges) {
    const Edge& edge = qpu.topology.edges().at(e);
    t.insert(edge.first);
    t.insert(edge.second);
  }
  return {t.begin(), t.end()};
}

QuantumTask build_calibration_task(const QpuModel& qpu, const FlaggedElements& flagged,
                                   const CalibrationPolicy& policy, Seconds now,
                                   TaskId id) {
  if (flagged.empty()) {
    throw std::invalid_argument("build_calibration_task: nothing flagged");
  }
  QuantumTask task;
  task.id = id;
  task.explicit_qubits = calibration_targets(qpu, flagged);
  task.n_qubits_required = task.explicit_qubits.size();
  task.program = Circuit(qpu.size());
  task.qpu_id = qpu.id;
  task.task_type = TaskType::Calibration;
  task.priority = 1;
  task.submit_time = now;
  task.est_runtime =
      policy.calib_duration * static_cast<Seconds>(task.explicit_qubits.size());
  return task;
}

void apply_calibration(QpuModel& qpu, const std::vector<PhysicalQubit>& targets,
                       const CalibrationPolicy& policy) {
  for (PhysicalQubit q : targets) {
    if (q < 0 || static_cast<std::size_t>(q) >= qpu.size() ||
        !qpu.in_calibration[static_cast<std::size_t>(q)]) {
      throw std::invalid_argument("apply_calibration: qubit " + std::to_string(q) +
                                  " is not in the calibration region of " + qpu.id);
    }
  }
  auto& f = qpu.fidelity;
  std::set<PhysicalQubit> t(targets.begin(), targets.end());
  for (PhysicalQubit q : t) {
    const auto i = static_cast<std::size_t>(q);
    f.single_gate[i] = restore(f.single_baseline[i], qpu.rng);
    f.measure[i] = restore(f.measure_baseline[i], qpu.rng);
    require_threshold(f.single_gate[i], policy.single_threshold,
                      "single-gate fidelity of qubit " + std::to_string(q));
    require_threshold(f.measure[i], policy.single_threshold,
                      "measurement fidelity of qubit " + std::to_string(q));
  }
  const auto& edges = qpu.topology.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (t.count(edges[e].first) != 0 && t.count(edges[e].second) != 0) {
      f.two_gate[e] = restore(f.two_baseline[e], qpu.rng);
      require_threshold(f.two_gate[e], policy.double_threshold,
                        "two-gate fidelity of edge " + std::to_string(e));
    }
  }
}

void check_restorable(const QpuModel& qpu, const CalibrationPolicy& policy) {
  const auto& f = qpu.fidelity;
  const auto fail = [&](const std::string& what, double baseline, double threshold) {
    throw std::invalid_argument(qpu.id + ": baseline " + what + " " + std::to_string(baseline) +
                                " cannot be restored above threshold " +
                                std::to_string(threshold));
  };
  for (std::size_t q = 0; q < qpu.size(); ++q) {
    if (f.single_baseline[q] * kRestoreLow < policy.single_threshold) {
      fail("single-gate fidelity of qubit " + std::to_string(q), f.single_baseline[q],
           policy.single_threshold);
    }
    if (f.measure_baseline[q] * kRestoreLow < policy.single_threshold) {
      fail("measurement fidelity of qubit " + std::to_string(q), f.measure_baseline[q],
           policy.single_threshold);
    }
  }
  for (std::size_t e = 0; e < f.two_baseline.size(); ++e) {
    if (f.two_baseline[e] * kRestoreLow < policy.double_threshold) {
      fail("two-gate fidelity of edge " + std::to_string(e), f.two_baseline[e],
           policy.double_threshold);
    }
  }
}

}  // namespace qpilot
