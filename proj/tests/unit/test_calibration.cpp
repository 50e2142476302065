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
#include "qpilot/calibration.hpp"

#include <gtest/gtest.h>

namespace qpilot {
namespace {

using testing::uniform_qpu;

TEST(Calibration, PolicyValidation) {
  CalibrationPolicy p;
  EXPECT_NO_THROW(p.validate());
  p.single_threshold = 1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.interval_min = 4000;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.interval_step = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.calib_duration = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Calibration, ThresholdsFlagElements) {
  QpuModel q = uniform_qpu("q");
  const CalibrationPolicy p;
  EXPECT_TRUE(check_fidelities(q, p).empty());
  q.fidelity.single_gate[1] = 0.979;
  q.fidelity.measure[5] = 0.97;
  q.fidelity.two_gate[3] = 0.949;
  q.fidelity.single_gate[2] = 0.98;
  const FlaggedElements f = check_fidelities(q, p);
  EXPECT_EQ(f.qubits, (std::vector<PhysicalQubit>{1, 5}));
  EXPECT_EQ(f.edges, (std::vector<std::size_t>{3}));
}

TEST(Calibration, AdaptiveInterval) {
  const CalibrationPolicy p;
  CalibrationState s = initial_calibration_state(uniform_qpu("q"), p, 100);
  EXPECT_EQ(s.current_interval, 3600);
  EXPECT_EQ(s.next_check_time, 3700);
  update_interval(s, p, false);
  EXPECT_EQ(s.current_interval, 2400);
  update_interval(s, p, false);
  EXPECT_EQ(s.current_interval, 1200);
  update_interval(s, p, false);
  EXPECT_EQ(s.current_interval, 1200);
  update_interval(s, p, true);
  EXPECT_EQ(s.current_interval, 3600);
}

TEST(Calibration, PendingElementsAreNotFlaggedTwice) {
  const QpuModel q = uniform_qpu("q");
  CalibrationState s = initial_calibration_state(q, CalibrationPolicy{}, 0);
  const FlaggedElements f{{1}, {0}};
  const FlaggedElements first = claim_new(s, f);
  EXPECT_EQ(first.qubits, f.qubits);
  EXPECT_EQ(first.edges, f.edges);
  EXPECT_TRUE(claim_new(s, f).empty());
  release_pending(s, q, calibration_targets(q, first));
  EXPECT_FALSE(claim_new(s, f).empty());
}

TEST(Calibration, TargetsIncludeEdgeEndpoints) {
  const QpuModel q = uniform_qpu("q");
  const std::size_t e = *q.topology.edge_index(5, 7);
  EXPECT_EQ(calibration_targets(q, {{2}, {e}}), (std::vector<PhysicalQubit>{2, 5, 7}));
}

TEST(Calibration, TaskShape) {
  const QpuModel q = uniform_qpu("q");
  const CalibrationPolicy p;
  const QuantumTask t = build_calibration_task(q, {{0, 3}, {}}, p, 50, 9);
  EXPECT_EQ(t.task_type, TaskType::Calibration);
  EXPECT_EQ(t.qpu_id, "q");
  EXPECT_EQ(t.explicit_qubits, (std::vector<PhysicalQubit>{0, 3}));
  EXPECT_EQ(t.est_runtime, 600);
  EXPECT_EQ(t.submit_time, 50);
  EXPECT_GT(t.priority, 0);
  EXPECT_THROW(build_calibration_task(q, {}, p, 0, 1), std::invalid_argument);
}

TEST(Calibration, RestoresNearBaseline) {
  QpuModel q = uniform_qpu("q");
  for (double& f : q.fidelity.single_gate) {
    f = 0.9;
  }
  for (double& f : q.fidelity.two_gate) {
    f = 0.8;
  }
  const std::vector<PhysicalQubit> targets = {0, 1};
  partition_regions(q, targets);
  apply_calibration(q, targets, CalibrationPolicy{});
  for (PhysicalQubit t : targets) {
    EXPECT_GE(q.fidelity.single_gate[static_cast<std::size_t>(t)], 0.99 * 0.998);
    EXPECT_LE(q.fidelity.single_gate[static_cast<std::size_t>(t)], 0.99);
  }
  EXPECT_GE(q.fidelity.two_gate[*q.topology.edge_index(0, 1)], 0.97 * 0.998);
  EXPECT_EQ(q.fidelity.two_gate[*q.topology.edge_index(0, 2)], 0.8);
  EXPECT_EQ(q.fidelity.single_gate[2], 0.9);
}

TEST(Calibration, RefusesTargetsOutsideTheRegion) {
  QpuModel q = uniform_qpu("q");
  EXPECT_THROW(apply_calibration(q, {0}, CalibrationPolicy{}), std::invalid_argument);
}

TEST(Calibration, FailsLoudlyWhenBaselineIsTooLow) {
  QpuModel q = uniform_qpu("q", 0.97, 0.97, 0.99);
  partition_regions(q, std::vector<PhysicalQubit>{0});
  EXPECT_THROW(apply_calibration(q, {0}, CalibrationPolicy{}), std::logic_error);
}

}  // namespace
}  // namespace qpilot
