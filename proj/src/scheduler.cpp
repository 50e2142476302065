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

#include "qpilot/scheduler.hpp"

#include "json.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace qpilot {
namespace {

using Json = nlohmann::ordered_json;

struct QpuChoice {
  std::size_t index = 0;
  double score = 0.0;
};

std::optional<QpuChoice> choose_qpu(const SchedulerState& state, const QuantumTask& task,
                                    const std::vector<QpuModel>& qpus,
                                    const SchedulerConfig& config) {
  std::optional<QpuChoice> best;
  for (std::size_t i = 0; i < qpus.size(); ++i) {
    const QpuModel& q = qpus[i];
    if ((task.qpu_id && *task.qpu_id != q.id) || qpu_busy(state, q.id) ||
        count_free_executable(q) < task.n_qubits_required) {
      continue;
    }
    const auto m = try_map_circuit(task.program, q, config.beam);
    if (m && (!best || m->fidelity_score > best->score)) {
      best = QpuChoice{i, m->fidelity_score};
    }
  }
  return best;
}

void reject(SchedulerState& state, const QuantumTask& task, Seconds now,
            std::string reason) {
  TaskRecord r;
  r.id = task.id;
  r.task_type = task.task_type;
  r.status = TaskStatus::Rejected;
  r.submit_time = task.submit_time;
  r.start_time = now;
  r.end_time = now;
  r.reason = reason;
  state.rejected.push_back(std::move(r));
  state.events.push_back(Json{{"time", now},
                              {"event", "reject"},
                              {"task", task.id},
                              {"reason", std::move(reason)}}
                             .dump());
}

void remove_waiting(SchedulerState& state, const QuantumTransaction& tx) {
  std::set<TaskId> ids;
  for (const auto& m : tx.members) {
    ids.insert(m.task_id);
  }
  std::erase_if(state.waiting,
                [&](const QuantumTask& t) { return ids.count(t.id) != 0; });
}

TransactionMember member_of(const QuantumTask& t) {
  TransactionMember m;
  m.task_id = t.id;
  m.task_type = t.task_type;
  m.runtime = t.est_runtime;
  m.submit_time = t.submit_time;
  return m;
}

std::vector<TaskId> member_ids(const QuantumTransaction& tx) {
  std::vector<TaskId> ids;
  for (const auto& m : tx.members) {
    ids.push_back(m.task_id);
  }
  return ids;
}

}  // namespace

QpuModel& find_qpu(std::vector<QpuModel>& qpus, const std::string& id) {
  for (QpuModel& q : qpus) {
    if (q.id == id) {
      return q;
    }
  }
  throw std::invalid_argument("unknown processor '" + id + "'");
}

const QpuModel& find_qpu(const std::vector<QpuModel>& qpus, const std::string& id) {
  for (const QpuModel& q : qpus) {
    if (q.id == id) {
      return q;
    }
  }
  throw std::invalid_argument("unknown processor '" + id + "'");
}

TaskId submit_task(SchedulerState& state, QuantumTask task,
                   const std::vector<QpuModel>& qpus) {
  if (state.known_ids.count(task.id) != 0) {
    throw std::invalid_argument("duplicate task id " + std::to_string(task.id));
  }
  if (task.est_runtime <= 0) {
    throw std::invalid_argument("task " + std::to_string(task.id) +
                                ": est_runtime must be > 0");
  }
  if (task.qpu_id) {
    find_qpu(qpus, *task.qpu_id);
  }
  if (task.task_type == TaskType::Calibration) {
    if (task.explicit_qubits.empty() || !task.qpu_id) {
      throw std::invalid_argument("calibration task " + std::to_string(task.id) +
                                  " needs explicit_qubits and a qpu_id");
    }
  } else if (task.n_qubits_required == 0) {
    throw std::invalid_argument("task " + std::to_string(task.id) +
                                " requires no qubits");
  }
  state.known_ids.insert(task.id);
  state.events.push_back(Json{{"time", task.submit_time},
                              {"event", "submit"},
                              {"task", task.id},
                              {"type", task_type_name(task.task_type)},
                              {"qubits", task.n_qubits_required},
                              {"est_runtime", task.est_runtime}}
                             .dump());

  if (task.task_type == TaskType::Calibration) {
    state.calibration_queue.push_back(std::move(task));
    return state.calibration_queue.back().id;
  }
  const bool fits_somewhere = std::any_of(qpus.begin(), qpus.end(), [&](const QpuModel& q) {
    return (!task.qpu_id || *task.qpu_id == q.id) && q.size() >= task.n_qubits_required;
  });
  if (!fits_somewhere) {
    const std::string reason = "task needs " + std::to_string(task.n_qubits_required) +
                               " qubits, more than any processor offers";
    reject(state, task, task.submit_time, reason);
    throw TaskRejected(reason);
  }
  state.waiting.push_back(std::move(task));
  return state.waiting.back().id;
}

double response_ratio(const QuantumTask& task, Seconds now) {
  if (now < task.submit_time) {
    throw std::invalid_argument("response_ratio: time precedes submission of task " +
                                std::to_string(task.id));
  }
  const auto run = static_cast<double>(task.est_runtime);
  return (static_cast<double>(now - task.submit_time) + run) / run;
}

std::vector<const QuantumTask*> hrrn_order(const SchedulerState& state, Seconds now) {
  std::vector<std::pair<double, const QuantumTask*>> ranked;
  for (const QuantumTask& t : state.waiting) {
    ranked.emplace_back(response_ratio(t, now), &t);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) {
      return a.first > b.first;
    }
    if (a.second->submit_time != b.second->submit_time) {
      return a.second->submit_time < b.second->submit_time;
    }
    return a.second->id < b.second->id;
  });
  std::vector<const QuantumTask*> out;
  for (const auto& [ratio, t] : ranked) {
    out.push_back(t);
  }
  return out;
}

bool qpu_busy(const SchedulerState& state, const std::string& qpu_id) {
  return std::any_of(state.running.begin(), state.running.end(),
                     [&](const RunningThread& r) { return r.thread.qpu_id == qpu_id; });
}

std::optional<std::size_t> select_qpu(const SchedulerState& state, const QuantumTask& task,
                                      const std::vector<QpuModel>& qpus,
                                      const SchedulerConfig& config) {
  const auto choice = choose_qpu(state, task, qpus, config);
  if (!choice) {
    return std::nullopt;
  }
  return choice->index;
}

QuantumTransaction form_transaction(SchedulerState& state, const QuantumTask& seed,
                                    const std::vector<const QuantumTask*>& candidates,
                                    const QpuModel& qpu, const SchedulerConfig& config) {
  QpuModel scratch = qpu;
  QuantumTransaction tx;
  tx.qpu_id = qpu.id;

  TransactionMember first = member_of(seed);
  if (seed.task_type == TaskType::Calibration) {
    try {
      partition_regions(scratch, seed.explicit_qubits);
    } catch (const std::exception& e) {
      throw std::logic_error("form_transaction: calibration task " +
                             std::to_string(seed.id) + " does not fit: " + e.what());
    }
    first.footprint = seed.explicit_qubits;
    std::sort(first.footprint.begin(), first.footprint.end());
  } else {
    auto m = try_map_circuit(seed.program, scratch, config.beam);
    if (!m || !allocate_qubits(scratch, m->footprint)) {
      throw std::logic_error("form_transaction: task " + std::to_string(seed.id) +
                             " does not fit on " + qpu.id);
    }
    first.footprint = m->footprint;
    first.fidelity_score = m->fidelity_score;
    first.mapped = std::move(m);
  }
  tx.members.push_back(std::move(first));

  const std::size_t cap = config.max_tasks_per_transaction == 0
                              ? std::numeric_limits<std::size_t>::max()
                              : config.max_tasks_per_transaction;
  for (const QuantumTask* cand : candidates) {
    if (tx.members.size() >= cap) {
      break;
    }
    if (cand->id == seed.id || cand->task_type != TaskType::General ||
        (cand->qpu_id && *cand->qpu_id != qpu.id) ||
        count_free_executable(scratch) < cand->n_qubits_required) {
      continue;
    }
    auto m = try_map_circuit(cand->program, scratch, config.beam);
    if (!m || m->fidelity_score < config.min_fidelity ||
        !allocate_qubits(scratch, m->footprint)) {
      continue;
    }
    TransactionMember member = member_of(*cand);
    member.footprint = m->footprint;
    member.fidelity_score = m->fidelity_score;
    member.mapped = std::move(m);
    tx.members.push_back(std::move(member));
  }

  std::set<PhysicalQubit> all;
  for (const auto& m : tx.members) {
    all.insert(m.footprint.begin(), m.footprint.end());
    tx.duration = std::max(tx.duration, m.runtime);
  }
  tx.footprint.assign(all.begin(), all.end());
  tx.id = state.next_transaction_id++;
  return tx;
}

QuantumThread bind_thread(SchedulerState& state, const QuantumTransaction& tx,
                          QpuModel& qpu, Seconds now) {
  if (qpu_busy(state, qpu.id)) {
    throw std::logic_error("bind_thread: " + qpu.id + " already runs a thread");
  }
  if (tx.qpu_id != qpu.id) {
    throw std::logic_error("bind_thread: transaction belongs to " + tx.qpu_id);
  }
  QpuModel staged = qpu;
  for (const auto& m : tx.members) {
    if (m.task_type == TaskType::Calibration) {
      partition_regions(staged, m.footprint);
    } else if (!allocate_qubits(staged, m.footprint)) {
      throw std::logic_error("bind_thread: allocation refused on " + qpu.id +
                             " for task " + std::to_string(m.task_id));
    }
  }
  qpu = std::move(staged);

  QuantumThread thread{tx.id, qpu.id, member_ids(tx), now, now + tx.duration};
  state.events.push_back(Json{{"time", now},
                              {"event", "dispatch"},
                              {"transaction", tx.id},
                              {"qpu", qpu.id},
                              {"tasks", thread.task_ids},
                              {"footprint", tx.footprint},
                              {"expected_completion", thread.expected_completion}}
                             .dump());
  state.running.push_back({thread, tx});
  return thread;
}

std::vector<Dispatch> schedule_tick(SchedulerState& state, std::vector<QpuModel>& qpus,
                                    Seconds now, const SchedulerConfig& config) {
  state.clock = now;
  std::vector<Dispatch> out;
  const auto dispatch = [&](const QuantumTask& seed, QpuModel& q) {
    const auto order = hrrn_order(state, now);
    QuantumTransaction tx = form_transaction(state, seed, order, q, config);
    QuantumThread thread = bind_thread(state, tx, q, now);
    remove_waiting(state, tx);
    out.push_back({std::move(thread), std::move(tx)});
  };

  for (auto it = state.calibration_queue.begin(); it != state.calibration_queue.end();) {
    QpuModel& q = find_qpu(qpus, *it->qpu_id);
    if (qpu_busy(state, q.id)) {
      ++it;
      continue;
    }
    dispatch(*it, q);
    it = state.calibration_queue.erase(it);
  }

  while (true) {
    bool progressed = false;
    for (const QuantumTask* cand : hrrn_order(state, now)) {
      const auto choice = choose_qpu(state, *cand, qpus, config);
      if (!choice) {
        continue;
      }
      if (choice->score < config.min_fidelity) {
        const QuantumTask task = *cand;
        std::erase_if(state.waiting, [&](const QuantumTask& t) { return t.id == task.id; });
        reject(state, task, now, "best mapped fidelity below min_fidelity");
        progressed = true;
        break;
      }
      const QuantumTask seed = *cand;
      dispatch(seed, qpus[choice->index]);
      progressed = true;
      break;
    }
    if (!progressed) {
      break;
    }
  }
  return out;
}

RunningThread complete_thread(SchedulerState& state, TransactionId id,
                              std::vector<QpuModel>& qpus, Seconds now,
                              const SchedulerConfig& config) {
  const auto it = std::find_if(state.running.begin(), state.running.end(),
                               [&](const RunningThread& r) {
                                 return r.thread.transaction_id == id;
                               });
  if (it == state.running.end()) {
    throw std::invalid_argument("complete_thread: no running transaction " +
                                std::to_string(id));
  }
  RunningThread done = std::move(*it);
  state.running.erase(it);
  state.clock = now;

  QpuModel& q = find_qpu(qpus, done.thread.qpu_id);
  for (const auto& m : done.transaction.members) {
    if (m.task_type == TaskType::Calibration) {
      apply_calibration(q, m.footprint, config.calibration);
    }
  }
  release_qubits(q, done.transaction.footprint);

  for (const auto& m : done.transaction.members) {
    TaskRecord r;
    r.id = m.task_id;
    r.task_type = m.task_type;
    r.status = TaskStatus::Completed;
    r.qpu_id = q.id;
    r.submit_time = m.submit_time;
    r.start_time = done.thread.start_time;
    r.end_time = now;
    r.fidelity_score = m.fidelity_score;
    r.footprint = m.footprint;
    state.completed.push_back(std::move(r));
  }
  state.events.push_back(Json{{"time", now},
                              {"event", "complete"},
                              {"transaction", id},
                              {"qpu", q.id},
                              {"tasks", done.thread.task_ids}}
                             .dump());
  return done;
}

std::optional<Seconds> next_completion(const SchedulerState& state) {
  std::optional<Seconds> t;
  for (const auto& r : state.running) {
    if (!t || r.thread.expected_completion < *t) {
      t = r.thread.expected_completion;
    }
  }
  return t;
}

}  // namespace qpilot
