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

#include "qpilot/harness.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "json.hpp"

namespace qpilot {
namespace {

Scenario short_drift_scenario(bool calibrate, double jitter) {
  Scenario s = calibration_scenario(calibrate, 5);
  s.duration = 4 * 3600;
  s.arrivals.erase(std::remove_if(s.arrivals.begin(), s.arrivals.end(),
                                  [&](const Arrival& a) { return a.time >= s.duration; }),
                   s.arrivals.end());
  s.qpus[0].model.drift.jitter_sigma = jitter;
  return s;
}

TEST(Harness, ExperimentNames) {
  EXPECT_EQ(experiment_names(), (std::vector<std::string>{"runtime", "calibration", "mapping"}));
  EXPECT_THROW(run_experiment("nope"), std::invalid_argument);
}

TEST(Harness, RuntimeScenarioMakespans) {
  // Ten 5 s tasks: one at a time on one chip, two chips halve it, and
  // packing two per transaction halves it again.
  EXPECT_EQ(run_scenario(runtime_scenario(1, 1, 1)).makespan, 50);
  EXPECT_EQ(run_scenario(runtime_scenario(2, 1, 1)).makespan, 25);
  EXPECT_EQ(run_scenario(runtime_scenario(1, 2, 1)).makespan, 25);
  EXPECT_EQ(run_scenario(runtime_scenario(2, 2, 1)).makespan, 15);
}

TEST(Harness, TaskConservationAndDeterminism) {
  const Scenario s = short_drift_scenario(true, 1e-4);
  const Report a = run_scenario(s);
  const Report b = run_scenario(s);
  EXPECT_EQ(a.submitted, a.completed + a.rejected);
  EXPECT_EQ(a.submitted, s.arrivals.size());
  EXPECT_EQ(report_jsonl(a), report_jsonl(b));
  std::size_t in_windows = 0;
  for (const auto& w : a.windows) {
    in_windows += w.completed + w.rejected;
  }
  EXPECT_EQ(in_windows, a.submitted);
}

TEST(Harness, EventLogIsCausal) {
  const Report r = run_scenario(short_drift_scenario(true, 1e-4));
  std::map<std::uint64_t, std::int64_t> submitted;
  std::map<std::uint64_t, std::int64_t> dispatched;
  std::int64_t last = 0;
  for (const std::string& line : r.events) {
    const auto e = nlohmann::json::parse(line);
    const auto t = e["time"].get<std::int64_t>();
    EXPECT_GE(t, last);
    last = t;
    const std::string kind = e["event"];
    if (kind == "submit") {
      submitted[e["task"].get<std::uint64_t>()] = t;
    } else if (kind == "dispatch") {
      EXPECT_GE(e["expected_completion"].get<std::int64_t>(), t);
      for (const auto& id : e["tasks"]) {
        ASSERT_TRUE(submitted.count(id.get<std::uint64_t>()));
        EXPECT_GE(t, submitted[id.get<std::uint64_t>()]);
        dispatched[id.get<std::uint64_t>()] = t;
      }
    } else if (kind == "complete") {
      for (const auto& id : e["tasks"]) {
        ASSERT_TRUE(dispatched.count(id.get<std::uint64_t>()));
        EXPECT_GT(t, dispatched[id.get<std::uint64_t>()]);
      }
    }
  }
}

TEST(Harness, UncalibratedMinimaNeverRiseWithoutJitter) {
  const Report r = run_scenario(short_drift_scenario(false, 0.0));
  ASSERT_GT(r.scores.size(), 2U);
  for (std::size_t i = 1; i < r.scores.size(); ++i) {
    EXPECT_LE(r.scores[i].min_single, r.scores[i - 1].min_single);
    EXPECT_LE(r.scores[i].min_two, r.scores[i - 1].min_two);
    EXPECT_LE(r.scores[i].min_measure, r.scores[i - 1].min_measure);
  }
  EXPECT_LT(r.scores.back().min_two, 0.95);
  EXPECT_LT(r.scores.back().min_single, r.scores.front().min_single);
  EXPECT_TRUE(r.checks.empty());
}

TEST(Harness, CalibrationChecksFollowTheAdaptiveInterval) {
  const Report r = run_scenario(short_drift_scenario(true, 1e-4));
  ASSERT_FALSE(r.checks.empty());
  EXPECT_EQ(r.checks[0].time, 3600);
  for (std::size_t i = 1; i < r.checks.size(); ++i) {
    EXPECT_EQ(r.checks[i].time, r.checks[i - 1].time + r.checks[i - 1].next_interval);
  }
  for (const auto& c : r.checks) {
    if (c.task) {
      EXPECT_TRUE(c.calibrated_at.has_value());
      EXPECT_GE(c.min_single_effective, 0.98);
      EXPECT_GE(c.min_two_effective, 0.95);
    }
  }
}

TEST(Harness, MappingQpuRunsDiffer) {
  const QpuModel a = mapping_qpu(1, 0);
  const QpuModel b = mapping_qpu(1, 1);
  EXPECT_NE(a.fidelity.single_gate, b.fidelity.single_gate);
  EXPECT_EQ(a.fidelity.single_gate, mapping_qpu(1, 0).fidelity.single_gate);
  for (std::size_t q = 0; q < 8; ++q) {
    EXPECT_LE(a.fidelity.single_gate[q], q < 4 ? 0.90 : 0.99);
    EXPECT_GE(a.fidelity.single_gate[q], (q < 4 ? 0.90 : 0.99) * 0.995);
  }
}

TEST(Harness, StrandedTasksAreRejected) {
  Scenario s = runtime_scenario(1, 1, 1);
  s.qpus[0].model.status[1] = QubitStatus::Busy;
  s.qpus[0].model.status[2] = QubitStatus::Busy;
  s.qpus[0].model.status[5] = QubitStatus::Busy;
  s.qpus[0].model.status[6] = QubitStatus::Busy;
  s.templates[0].program = generate_benchmark(BenchmarkKind::GHZ, 3);
  const Report r = run_scenario(s);
  EXPECT_EQ(r.completed, 0U);
  EXPECT_EQ(r.rejected, 10U);
}

}  // namespace
}  // namespace qpilot
