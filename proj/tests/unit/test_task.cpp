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

#include "qpilot/benchmarks.hpp"
#include "qpilot/task.hpp"

#include <gtest/gtest.h>

namespace qpilot {
namespace {

TEST(Task, RuntimeCountsNativeGatesPlusReadout) {
  // GHZ(2): U3, U3 CZ U3 -> 4 native gates, plus one read-out, 1000 shots.
  EXPECT_EQ(estimate_runtime(generate_benchmark(BenchmarkKind::GHZ, 2)), 5);
  EXPECT_EQ(estimate_runtime(generate_benchmark(BenchmarkKind::GHZ, 3)), 8);
  TimingModel slow;
  slow.shots = 2000;
  EXPECT_EQ(estimate_runtime(generate_benchmark(BenchmarkKind::GHZ, 2), slow), 10);
}

TEST(Task, RuntimeIsAtLeastOneSecond) {
  TimingModel quick;
  quick.shots = 1;
  EXPECT_EQ(estimate_runtime(generate_benchmark(BenchmarkKind::GHZ, 2), quick), 1);
  EXPECT_EQ(estimate_runtime(Circuit(1), quick), 1);
}

TEST(Task, RuntimeRoundsUp) {
  TimingModel t;
  t.gate_seconds = 0.0015;
  t.measure_seconds = 0.0;
  t.shots = 1000;
  Circuit c(1);
  c.add(GateKind::U3, {0}, {0, 0, 0});
  EXPECT_EQ(estimate_runtime(c, t), 2);
}

TEST(Task, GeneralTaskSizesByActiveQubits) {
  Circuit c(6);
  c.add(GateKind::CNOT, {1, 3}).add(GateKind::Measure, {3});
  const QuantumTask t = make_general_task(7, c, 42);
  EXPECT_EQ(t.id, 7U);
  EXPECT_EQ(t.n_qubits_required, 2U);
  EXPECT_EQ(t.submit_time, 42);
  EXPECT_EQ(t.task_type, TaskType::General);
  EXPECT_EQ(t.est_runtime, estimate_runtime(c));
  EXPECT_EQ(task_type_name(TaskType::Calibration), "calibration");
}

}  // namespace
}  // namespace qpilot
