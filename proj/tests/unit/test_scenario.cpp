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

#include "qpilot/scenario.hpp"

#include <gtest/gtest.h>

namespace qpilot {
namespace {

constexpr const char* kQpu =
    R"({"id": "q0", "topology": {"kind": "grid", "rows": 2, "cols": 2},
        "fidelity": {"single": 0.99, "two": 0.97},
        "drift": {"single": {"tau": 1000, "floor": 0.5}, "two": {"tau": 1000, "floor": 0.5},
                  "measure": {"tau": 1000, "floor": 0.5}}})";

std::string scenario_text(const std::string& workload, const std::string& extra = "") {
  return std::string(R"({"seed": 3, "duration": 100, "qpus": [)") + kQpu + "]," +
         R"("workload": )" + workload + extra + "}";
}

TEST(Scenario, PeriodicArrivalsCycleTemplates) {
  const Scenario s = scenario_from_text(
      scenario_text(R"({"templates": [{"name": "a", "benchmark": "GHZ", "qubits": 2},
          {"name": "b", "circuit": "H 0\nCNOT 0,1\nCNOT 1,2"}], "interval": 30})"),
      "s");
  ASSERT_EQ(s.arrivals.size(), 4U);
  EXPECT_EQ(s.arrivals[3].time, 90);
  EXPECT_EQ(s.arrivals[1].template_index, 1U);
  EXPECT_EQ(s.templates[1].program.n_qubits, 3U);
  EXPECT_EQ(s.score_template, 0U);
  EXPECT_EQ(s.seed, 3U);
}

TEST(Scenario, ExplicitArrivalsAreSortedStably) {
  const Scenario s = scenario_from_text(
      scenario_text(R"({"templates": [{"name": "a", "benchmark": "GHZ", "qubits": 2}],
          "arrivals": [{"time": 50, "template": "a"}, {"time": 10, "template": "a",
          "qpu": "q0"}, {"time": 50, "template": "a", "qpu": "q0"}]})"),
      "s");
  ASSERT_EQ(s.arrivals.size(), 3U);
  EXPECT_EQ(s.arrivals[0].time, 10);
  EXPECT_FALSE(s.arrivals[1].qpu_id.has_value());
  EXPECT_TRUE(s.arrivals[2].qpu_id.has_value());
}

TEST(Scenario, ReseedChangesUnpinnedDriftSeeds) {
  Scenario s = scenario_from_text(scenario_text(R"({"templates": []})"), "s");
  const auto before = s.qpus[0].model.drift.seed;
  reseed(s, 4);
  EXPECT_NE(s.qpus[0].model.drift.seed, before);
  reseed(s, 3);
  EXPECT_EQ(s.qpus[0].model.drift.seed, before);
}

TEST(Scenario, ValidationErrors) {
  EXPECT_THROW(scenario_from_text(R"({"duration": 10})", "s"), ConfigError);
  EXPECT_THROW(scenario_from_text(R"({"duration": 10, "qpus": []})", "s"), ConfigError);
  EXPECT_THROW(scenario_from_text(scenario_text(R"({"templates": [{"name": "a"}]})"), "s"),
               ConfigError);
  EXPECT_THROW(scenario_from_text(scenario_text(R"({"templates": [{"name": "a",
      "benchmark": "GROVER", "qubits": 2}]})"), "s"),
               ConfigError);
  EXPECT_THROW(scenario_from_text(scenario_text(R"({"templates": [{"name": "a",
      "circuit": "FOO 0"}]})"), "s"),
               ConfigError);
  EXPECT_THROW(scenario_from_text(scenario_text(R"({"templates": [{"name": "a",
      "benchmark": "GHZ", "qubits": 2}], "arrivals": [{"time": 0, "template": "zz"}]})"),
                                  "s"),
               ConfigError);
  EXPECT_THROW(scenario_from_text(scenario_text(R"({"templates": []})",
                                                R"(, "policy": {"min_fidelity": 2})"),
                                  "s"),
               ConfigError);
  try {
    scenario_from_text(scenario_text(R"({"templates": [], "bogus": 1})"), "s");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("workload.bogus"), std::string::npos);
  }
}

TEST(Scenario, LoadsTheSampleScenario) {
  const Scenario s = load_scenario(QPILOT_SOURCE_DIR "/configs/small_day.json");
  EXPECT_EQ(s.qpus.size(), 2U);
  EXPECT_EQ(s.templates.size(), 4U);
  EXPECT_EQ(s.templates[2].program.n_qubits, 2U);
  EXPECT_EQ(s.scheduler.beam, 32U);
  EXPECT_EQ(s.trace_interval, 1800);
  EXPECT_THROW(load_scenario("/nonexistent.json"), ConfigError);
}

}  // namespace
}  // namespace qpilot
