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
#include "qpilot/qpu_config.hpp"
#include "qpilot/scheduler.hpp"
#include "qpilot/task.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qpilot {

struct TaskTemplate {
  std::string name;
  Circuit program;
};

struct Arrival {
  Seconds time = 0;
  std::size_t template_index = 0;
  std::optional<std::string> qpu_id;
};

struct Scenario {
  std::uint64_t seed = 0;
  Seconds duration = 0;
  Seconds drift_step = 60;
  std::vector<QpuConfig> qpus;
  std::vector<TaskTemplate> templates;
  /// Sorted by time; ties keep their listed order.
  std::vector<Arrival> arrivals;
  TimingModel timing;
  SchedulerConfig scheduler;
  Seconds trace_interval = 600;
  Seconds window = 3600;
  /// Template whose trial mapping score is traced; defaults to the first.
  std::optional<std::size_t> score_template;
};

/// Loads a scenario file (JSON):
///
///   { "seed": 1, "duration": 3600, "drift_step": 60,
///     "qpus": [ <processor objects, see qpu_from_json> ],
///     "workload": {
///       "templates": [ {"name": "ghz3", "benchmark": "GHZ", "qubits": 3},
///                      {"name": "mine", "circuit": "QUBITS 2\nH 0\nCNOT 0,1"},
///                      {"name": "file", "file": "bell.qc"} ],
///       "interval": 10, "start": 0, "count": 100,
///       "arrivals": [ {"time": 0, "template": "ghz3", "qpu": "qpu0"} ],
///       "shots": 1000, "gate_seconds": 0.001, "measure_seconds": 0.001 },
///     "policy": { "calibration": { <policy fields> }, "beam": 64,
///                 "max_tasks_per_transaction": 0, "min_fidelity": 0.0 },
///     "report": { "trace_interval": 600, "window": 3600,
///                 "score_template": "ghz3" } }
///
/// Periodic arrivals cycle through the templates and stop at `count` or the
/// end of the run. Unknown keys are rejected; errors name the line (syntax)
/// or the field (validation). Relative circuit files resolve against the
/// scenario's directory.
Scenario load_scenario(const std::filesystem::path& path);
Scenario scenario_from_text(std::string_view text, const std::string& source,
                            const std::filesystem::path& base_dir = {});
Scenario scenario_from_json(const Json& j, const std::filesystem::path& base_dir = {});

/// Overrides the master seed and re-derives every processor's drift seed
/// that the file did not pin.
void reseed(Scenario& s, std::uint64_t seed);

}  // namespace qpilot
