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

#include "drivers.hpp"
#include "oracles.hpp"
#include "qpilot/benchmarks.hpp"
#include "qpilot/calibration.hpp"
#include "qpilot/scheduler.hpp"

#include <gtest/gtest.h>

#include "json.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace qpilot {
namespace {

using testing::uniform_qpu;

QuantumTask ghz_task(TaskId id, std::size_t n, Seconds submit) {
  return make_general_task(id, generate_benchmark(BenchmarkKind::GHZ, n), submit);
}

SchedulerConfig no_calibration() {
  SchedulerConfig c;
  c.calibration.enabled = false;
  return c;
}

TEST(Scheduler, ResponseRatio) {
  QuantumTask t = ghz_task(1, 2, 10);
  t.est_runtime = 5;
  EXPECT_DOUBLE_EQ(response_ratio(t, 10), 1.0);
  EXPECT_DOUBLE_EQ(response_ratio(t, 20), 3.0);
  EXPECT_THROW(response_ratio(t, 9), std::invalid_argument);
}

TEST(Scheduler, HrrnOrderAtOneInstant) {
  std::vector<QpuModel> qpus = {uniform_qpu("q0")};
  SchedulerState s;
  const std::vector<std::tuple<TaskId, Seconds, Seconds>> spec = {
      {1, 0, 10}, {2, 5, 1}, {3, 0, 20}, {4, 8, 2}, {5, 5, 1}};
  std::vector<oracle::HrrnJob> jobs;
  for (const auto& [id, submit, run] : spec) {
    QuantumTask t = ghz_task(id, 2, submit);
    t.est_runtime = run;
    submit_task(s, t, qpus);
    jobs.push_back({id, submit, run});
  }
  std::vector<TaskId> got;
  for (const QuantumTask* t : hrrn_order(s, 10)) {
    got.push_back(t->id);
  }
  // At t = 10: ratios 2, 6, 1.5, 2, 6 -> 2 and 5 tie (same submit, id), then 1
  // and 4 tie (1 submitted earlier), then 3.
  EXPECT_EQ(got, (std::vector<TaskId>{2, 5, 1, 4, 3}));
}

TEST(Scheduler, DispatchOrderMatchesTheHrrnOracle) {
  std::mt19937_64 rng(81);
  for (int rep = 0; rep < 50; ++rep) {
    const auto jobs = testing::random_jobs(rng, 12);
    EXPECT_EQ(testing::scheduler_dispatch_order(jobs), oracle::hrrn_dispatch(jobs));
  }
}

TEST(Scheduler, SubmitValidation) {
  std::vector<QpuModel> qpus = {uniform_qpu("q0")};
  SchedulerState s;
  submit_task(s, ghz_task(1, 2, 0), qpus);
  EXPECT_THROW(submit_task(s, ghz_task(1, 2, 0), qpus), std::invalid_argument);
  QuantumTask zero = ghz_task(2, 2, 0);
  zero.est_runtime = 0;
  EXPECT_THROW(submit_task(s, zero, qpus), std::invalid_argument);
  QuantumTask unknown = ghz_task(3, 2, 0);
  unknown.qpu_id = "nope";
  EXPECT_THROW(submit_task(s, unknown, qpus), std::invalid_argument);
  EXPECT_THROW(submit_task(s, ghz_task(4, 9, 0), qpus), TaskRejected);
  ASSERT_EQ(s.rejected.size(), 1U);
  EXPECT_EQ(s.rejected[0].id, 4U);
  QuantumTask calib;
  calib.id = 5;
  calib.task_type = TaskType::Calibration;
  EXPECT_THROW(submit_task(s, calib, qpus), std::invalid_argument);
}

TEST(Scheduler, PacksDisjointTasksIntoOneTransaction) {
  std::vector<QpuModel> qpus = {uniform_qpu("q0")};
  SchedulerState s;
  for (TaskId id = 1; id <= 5; ++id) {
    submit_task(s, ghz_task(id, 2, 0), qpus);
  }
  const auto d = schedule_tick(s, qpus, 0, no_calibration());
  ASSERT_EQ(d.size(), 1U);
  // Four 2-qubit tasks fill the 8-qubit chip.
  EXPECT_EQ(d[0].transaction.members.size(), 4U);
  std::set<PhysicalQubit> seen;
  for (const auto& m : d[0].transaction.members) {
    for (PhysicalQubit p : m.footprint) {
      EXPECT_TRUE(seen.insert(p).second);
    }
  }
  EXPECT_EQ(s.waiting.size(), 1U);
  EXPECT_TRUE(qpu_busy(s, "q0"));
  EXPECT_EQ(count_free_executable(qpus[0]), 0U);
}

TEST(Scheduler, TransactionCapLimitsMembers) {
  std::vector<QpuModel> qpus = {uniform_qpu("q0")};
  SchedulerState s;
  for (TaskId id = 1; id <= 5; ++id) {
    submit_task(s, ghz_task(id, 2, 0), qpus);
  }
  SchedulerConfig cfg = no_calibration();
  cfg.max_tasks_per_transaction = 2;
  const auto d = schedule_tick(s, qpus, 0, cfg);
  ASSERT_EQ(d.size(), 1U);
  EXPECT_EQ(d[0].transaction.members.size(), 2U);
}

TEST(Scheduler, SpreadsAcrossIdleProcessors) {
  std::vector<QpuModel> qpus = {uniform_qpu("a"), uniform_qpu("b")};
  SchedulerState s;
  for (TaskId id = 1; id <= 4; ++id) {
    submit_task(s, ghz_task(id, 2, 0), qpus);
  }
  SchedulerConfig cfg = no_calibration();
  cfg.max_tasks_per_transaction = 1;
  const auto d = schedule_tick(s, qpus, 0, cfg);
  ASSERT_EQ(d.size(), 2U);
  EXPECT_NE(d[0].thread.qpu_id, d[1].thread.qpu_id);
}

TEST(Scheduler, CompletionReleasesQubitsAndRecordsTasks) {
  std::vector<QpuModel> qpus = {uniform_qpu("q0")};
  SchedulerState s;
  submit_task(s, ghz_task(1, 3, 0), qpus);
  const auto d = schedule_tick(s, qpus, 0, no_calibration());
  ASSERT_EQ(d.size(), 1U);
  EXPECT_EQ(d[0].thread.expected_completion, 8);
  EXPECT_EQ(next_completion(s), 8);
  complete_thread(s, d[0].thread.transaction_id, qpus, 8, no_calibration());
  EXPECT_EQ(count_free_executable(qpus[0]), 8U);
  ASSERT_EQ(s.completed.size(), 1U);
  EXPECT_EQ(s.completed[0].start_time, 0);
  EXPECT_EQ(s.completed[0].end_time, 8);
  EXPECT_GT(s.completed[0].fidelity_score, 0.0);
  EXPECT_THROW(complete_thread(s, 99, qpus, 8, no_calibration()), std::invalid_argument);
  EXPECT_FALSE(next_completion(s).has_value());
}

TEST(Scheduler, MinFidelityRejectsAtDispatch) {
  std::vector<QpuModel> qpus = {uniform_qpu("q0", 0.9, 0.8, 0.9)};
  SchedulerState s;
  submit_task(s, ghz_task(1, 4, 0), qpus);
  SchedulerConfig cfg = no_calibration();
  cfg.min_fidelity = 0.99;
  EXPECT_TRUE(schedule_tick(s, qpus, 0, cfg).empty());
  ASSERT_EQ(s.rejected.size(), 1U);
  EXPECT_EQ(s.rejected[0].reason, "best mapped fidelity below min_fidelity");
  EXPECT_TRUE(s.waiting.empty());
}

TEST(Scheduler, CalibrationTasksRunFirstAndRestoreFidelity) {
  std::vector<QpuModel> qpus = {uniform_qpu("q0")};
  qpus[0].fidelity.single_gate[2] = 0.9;
  SchedulerConfig cfg;
  SchedulerState s;
  submit_task(s, ghz_task(1, 2, 0), qpus);
  const FlaggedElements f = check_fidelities(qpus[0], cfg.calibration);
  ASSERT_EQ(f.qubits, (std::vector<PhysicalQubit>{2}));
  submit_task(s, build_calibration_task(qpus[0], f, cfg.calibration, 0, 100), qpus);
  const auto d = schedule_tick(s, qpus, 0, cfg);
  ASSERT_EQ(d.size(), 1U);
  ASSERT_GE(d[0].transaction.members.size(), 2U);
  EXPECT_EQ(d[0].transaction.members[0].task_type, TaskType::Calibration);
  EXPECT_EQ(calibration_region(qpus[0]), (std::vector<PhysicalQubit>{2}));
  for (const auto& m : d[0].transaction.members) {
    if (m.task_type == TaskType::General) {
      EXPECT_EQ(std::count(m.footprint.begin(), m.footprint.end(), 2), 0);
    }
  }
  complete_thread(s, d[0].thread.transaction_id, qpus, d[0].thread.expected_completion, cfg);
  EXPECT_GE(qpus[0].fidelity.single_gate[2], 0.99 * 0.998);
  EXPECT_TRUE(calibration_region(qpus[0]).empty());
}

TEST(Scheduler, BindThreadIsAllOrNothing) {
  std::vector<QpuModel> qpus = {uniform_qpu("q0")};
  SchedulerState s;
  const QuantumTask a = ghz_task(1, 2, 0);
  const QuantumTask b = ghz_task(2, 2, 0);
  QuantumTransaction tx = form_transaction(s, a, {&b}, qpus[0], no_calibration());
  ASSERT_EQ(tx.members.size(), 2U);
  // Steal one of the second member's qubits; binding must change nothing.
  const PhysicalQubit stolen = tx.members[1].footprint[0];
  ASSERT_TRUE(allocate_qubits(qpus[0], std::vector<PhysicalQubit>{stolen}));
  const QpuModel before = qpus[0];
  EXPECT_THROW(bind_thread(s, tx, qpus[0], 0), std::logic_error);
  EXPECT_EQ(qpus[0].status, before.status);
  EXPECT_TRUE(s.running.empty());
}

TEST(Scheduler, EventLogIsCausal) {
  std::vector<QpuModel> qpus = {uniform_qpu("q0")};
  SchedulerState s;
  SchedulerConfig cfg = no_calibration();
  cfg.max_tasks_per_transaction = 1;
  for (TaskId id = 1; id <= 3; ++id) {
    submit_task(s, ghz_task(id, 2, 0), qpus);
  }
  Seconds t = 0;
  schedule_tick(s, qpus, t, cfg);
  while (const auto c = next_completion(s)) {
    t = *c;
    complete_thread(s, s.running.front().thread.transaction_id, qpus, t, cfg);
    schedule_tick(s, qpus, t, cfg);
  }
  Seconds last = 0;
  for (const std::string& e : s.events) {
    const auto j = nlohmann::json::parse(e);
    EXPECT_GE(j["time"].get<Seconds>(), last);
    last = j["time"].get<Seconds>();
  }
  EXPECT_EQ(s.completed.size(), 3U);
  EXPECT_EQ(t, 15);
}

}  // namespace
}  // namespace qpilot
