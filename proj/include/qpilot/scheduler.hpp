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

#include "qpilot/calibration.hpp"
#include "qpilot/mapper.hpp"
#include "qpilot/qpu.hpp"
#include "qpilot/task.hpp"

#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpilot {

class TaskRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SchedulerConfig {
  std::size_t beam = kDefaultBeam;
  /// Upper bound on tasks per transaction; 0 = limited only by qubits.
  std::size_t max_tasks_per_transaction = 0;
  /// General tasks whose best mapped fidelity score is below this are
  /// rejected when they come up for dispatch.
  double min_fidelity = 0.0;
  CalibrationPolicy calibration;
};

struct TransactionMember {
  TaskId task_id = 0;
  TaskType task_type = TaskType::General;
  Seconds submit_time = 0;
  Seconds runtime = 0;
  /// Mapped qubits of a general task, or the calibration targets.
  std::vector<PhysicalQubit> footprint;
  double fidelity_score = 1.0;
  std::optional<MappedCircuit> mapped;
};

struct QuantumTransaction {
  TransactionId id = 0;
  std::string qpu_id;
  std::vector<TransactionMember> members;
  /// Union of member footprints, ascending.
  std::vector<PhysicalQubit> footprint;
  Seconds duration = 0;
};

struct QuantumThread {
  TransactionId transaction_id = 0;
  std::string qpu_id;
  std::vector<TaskId> task_ids;
  Seconds start_time = 0;
  Seconds expected_completion = 0;
};

struct RunningThread {
  QuantumThread thread;
  QuantumTransaction transaction;
};

enum class TaskStatus { Completed, Rejected };

struct TaskRecord {
  TaskId id = 0;
  TaskType task_type = TaskType::General;
  TaskStatus status = TaskStatus::Completed;
  std::string qpu_id;
  Seconds submit_time = 0;
  Seconds start_time = 0;
  Seconds end_time = 0;
  double fidelity_score = 0.0;
  std::vector<PhysicalQubit> footprint;
  std::string reason;
};

struct SchedulerState {
  std::vector<QuantumTask> waiting;
  std::deque<QuantumTask> calibration_queue;
  std::vector<RunningThread> running;
  std::vector<TaskRecord> completed;
  std::vector<TaskRecord> rejected;
  Seconds clock = 0;
  TransactionId next_transaction_id = 1;
  std::set<TaskId> known_ids;
  /// JSON-lines event log.
  std::vector<std::string> events;
};

struct Dispatch {
  QuantumThread thread;
  QuantumTransaction transaction;
};

/// Queues a task. Throws std::invalid_argument for a duplicate id or a
/// malformed task and TaskRejected (after recording the rejection) for a
/// task no processor could ever hold.
TaskId submit_task(SchedulerState& state, QuantumTask task,
                   const std::vector<QpuModel>& qpus);

/// (waiting + est_runtime) / est_runtime. Throws std::invalid_argument when
/// now precedes the submission.
double response_ratio(const QuantumTask& task, Seconds now);

/// Waiting general tasks, highest response ratio first; ties go to the
/// earlier submission, then the smaller id.
std::vector<const QuantumTask*> hrrn_order(const SchedulerState& state, Seconds now);

/// Index of the idle processor whose free executable region holds the task
/// with the best trial mapping score, if any.
std::optional<std::size_t> select_qpu(const SchedulerState& state, const QuantumTask& task,
                                      const std::vector<QpuModel>& qpus,
                                      const SchedulerConfig& config);

bool qpu_busy(const SchedulerState& state, const std::string& qpu_id);

/// Builds a transaction around `seed` on a scratch copy of `qpu`: a
/// calibration seed claims its targets as the calibration region, then
/// candidates (already in priority order) join while their mapped footprints
/// fit the remaining free executable qubits. Throws std::logic_error when the
/// seed itself does not fit.
QuantumTransaction form_transaction(SchedulerState& state, const QuantumTask& seed,
                                    const std::vector<const QuantumTask*>& candidates,
                                    const QpuModel& qpu, const SchedulerConfig& config);

/// Commits the transaction's regions and allocations to `qpu` (all or
/// nothing) and starts its thread. Throws std::logic_error when the
/// processor already runs a thread or an allocation is refused.
QuantumThread bind_thread(SchedulerState& state, const QuantumTransaction& tx,
                          QpuModel& qpu, Seconds now);

/// One scheduling pass: calibration tasks first in FIFO order, then general
/// tasks by response ratio until nothing more can start.
std::vector<Dispatch> schedule_tick(SchedulerState& state, std::vector<QpuModel>& qpus,
                                    Seconds now, const SchedulerConfig& config);

/// Finishes a running thread: restores calibrated elements, releases every
/// footprint qubit, and records one result per member task. Returns the
/// finished thread. Throws std::invalid_argument for an unknown transaction.
RunningThread complete_thread(SchedulerState& state, TransactionId id,
                              std::vector<QpuModel>& qpus, Seconds now,
                              const SchedulerConfig& config);

/// Earliest expected completion among running threads.
std::optional<Seconds> next_completion(const SchedulerState& state);

QpuModel& find_qpu(std::vector<QpuModel>& qpus, const std::string& id);
const QpuModel& find_qpu(const std::vector<QpuModel>& qpus, const std::string& id);

}  // namespace qpilot
