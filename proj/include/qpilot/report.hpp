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

#include "qpilot/qpu_config.hpp"
#include "qpilot/scheduler.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qpilot {

struct ThroughputWindow {
  Seconds start = 0;
  Seconds end = 0;
  std::size_t completed = 0;
  std::size_t rejected = 0;
};

/// Periodic snapshot of one processor.
struct ScoreSample {
  Seconds time = 0;
  std::string qpu;
  /// Trial mapping score of the scenario's score template on the whole chip.
  double mapped_score = 0.0;
  double min_single = 0.0;
  double min_two = 0.0;
  double min_measure = 0.0;
};

/// One calibration check. The raw minima are the values seen at the check;
/// the effective minima replace each newly flagged element by the value its
/// calibration restored.
struct CheckRecord {
  Seconds time = 0;
  std::string qpu;
  std::size_t flagged_qubits = 0;
  std::size_t flagged_edges = 0;
  std::optional<TaskId> task;
  std::optional<Seconds> calibrated_at;
  Seconds next_interval = 0;
  double min_single_raw = 0.0;
  double min_two_raw = 0.0;
  double min_measure_raw = 0.0;
  double min_single_effective = 0.0;
  double min_two_effective = 0.0;
  double min_measure_effective = 0.0;
};

struct Report {
  std::string label;
  /// Completed and rejected tasks, by id.
  std::vector<TaskRecord> tasks;
  std::size_t submitted = 0;
  std::size_t completed = 0;
  std::size_t rejected = 0;
  /// Latest completion time of a general task (0 when none completed).
  Seconds makespan = 0;
  std::vector<ThroughputWindow> windows;
  std::vector<FidelitySample> trace;
  std::vector<ScoreSample> scores;
  std::vector<CheckRecord> checks;
  std::vector<std::string> events;
};

/// Plain table for experiment summaries.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct ExperimentBundle {
  std::string name;
  std::vector<Report> reports;
  Table summary;
};

enum class ReportFormat { Csv, JsonLines };

ReportFormat parse_report_format(const std::string& name);

std::string tasks_csv(const Report& r);
std::string windows_csv(const Report& r);
std::string scores_csv(const Report& r);
std::string checks_csv(const Report& r);
std::string table_csv(const Table& t);

/// Every record of the report as typed JSON lines ("summary", "task",
/// "window", "trace", "score", "check", "event").
std::string report_jsonl(const Report& r);
std::string table_jsonl(const Table& t);

/// Inverse of report_jsonl.
Report parse_report_jsonl(const std::string& text);
Report load_report_jsonl(const std::filesystem::path& path);

/// Writes `<prefix>tasks.csv`, `windows.csv`, `trace.csv`, `scores.csv`,
/// `checks.csv` and `events.jsonl` (Csv) or `<prefix>report.jsonl`
/// (JsonLines) into `dir`. Throws std::runtime_error when a file cannot be
/// written. Returns the paths written.
std::vector<std::filesystem::path> emit_report(const Report& r, ReportFormat format,
                                               const std::filesystem::path& dir,
                                               const std::string& prefix = "");

/// Each report under `<label>_` plus `summary.csv` / `summary.jsonl`.
std::vector<std::filesystem::path> emit_bundle(const ExperimentBundle& b,
                                               ReportFormat format,
                                               const std::filesystem::path& dir);

}  // namespace qpilot
