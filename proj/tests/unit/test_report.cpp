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

#include "qpilot/report.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qpilot {
namespace {

namespace fs = std::filesystem;

Report sample_report() {
  Report r;
  r.label = "sample";
  TaskRecord done;
  done.id = 1;
  done.qpu_id = "q0";
  done.submit_time = 0;
  done.start_time = 2;
  done.end_time = 7;
  done.fidelity_score = 0.8765432101234;
  done.footprint = {4, 5};
  TaskRecord rejected;
  rejected.id = 2;
  rejected.status = TaskStatus::Rejected;
  rejected.reason = "too, \"big\"";
  TaskRecord calib;
  calib.id = 3;
  calib.task_type = TaskType::Calibration;
  r.tasks = {done, rejected, calib};
  r.submitted = 2;
  r.completed = 1;
  r.rejected = 1;
  r.makespan = 7;
  r.windows = {{0, 3600, 1, 1}};
  r.trace = {{0, "q0/q0/single", 0.99}, {0, "q0/e0-1/two", 0.1 + 0.2}};
  r.scores = {{600, "q0", 0.5, 0.98, 0.95, 0.97}};
  CheckRecord c;
  c.time = 3600;
  c.qpu = "q0";
  c.flagged_qubits = 1;
  c.task = 11;
  c.calibrated_at = 3900;
  c.next_interval = 3600;
  c.min_single_raw = 0.97;
  c.min_single_effective = 0.99;
  r.checks = {c, CheckRecord{}};
  r.events = {R"({"time":0,"event":"submit","task":1})"};
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Report, EmptyReportGivesHeaderOnlyCsv) {
  const Report r;
  EXPECT_EQ(tasks_csv(r), "id,type,status,qpu,submit,start,end,fidelity_score,footprint,reason\n");
  EXPECT_EQ(windows_csv(r), "start,end,completed,rejected\n");
  EXPECT_EQ(scores_csv(r), "time,qpu,mapped_score,min_single,min_two,min_measure\n");
  const std::string checks = checks_csv(r);
  EXPECT_EQ(std::count(checks.begin(), checks.end(), '\n'), 1);
}

TEST(Report, CsvQuotesAwkwardFields) {
  const std::string csv = tasks_csv(sample_report());
  EXPECT_NE(csv.find("\"too, \"\"big\"\"\""), std::string::npos) << csv;
  EXPECT_NE(csv.find("1,general,completed,q0,0,2,7,0.8765432101,4 5,"), std::string::npos)
      << csv;
}

TEST(Report, JsonLinesRoundTrip) {
  const Report r = sample_report();
  const std::string text = report_jsonl(r);
  const Report back = parse_report_jsonl(text);
  EXPECT_EQ(report_jsonl(back), text);
  EXPECT_EQ(back.tasks.size(), 3U);
  EXPECT_EQ(back.tasks[1].reason, r.tasks[1].reason);
  EXPECT_EQ(back.trace[1].value, r.trace[1].value);
  EXPECT_EQ(back.checks[0].calibrated_at, 3900);
  EXPECT_FALSE(back.checks[1].task.has_value());
  EXPECT_EQ(back.events, r.events);
  EXPECT_THROW(parse_report_jsonl("{\"record\": \"nope\"}\n"), std::exception);
  EXPECT_THROW(parse_report_jsonl("not json\n"), std::exception);
}

TEST(Report, EmitWritesStableFiles) {
  const fs::path dir = fs::temp_directory_path() / "qpilot_report_test";
  fs::remove_all(dir);
  const Report r = sample_report();
  const auto csv = emit_report(r, ReportFormat::Csv, dir);
  EXPECT_EQ(csv.size(), 6U);
  const std::string first = slurp(dir / "tasks.csv");
  emit_report(r, ReportFormat::Csv, dir);
  EXPECT_EQ(slurp(dir / "tasks.csv"), first);
  const auto jl = emit_report(r, ReportFormat::JsonLines, dir, "x_");
  ASSERT_EQ(jl.size(), 1U);
  EXPECT_EQ(report_jsonl(load_report_jsonl(jl[0])), report_jsonl(r));
  fs::remove_all(dir);
}

TEST(Report, EmitBundle) {
  const fs::path dir = fs::temp_directory_path() / "qpilot_bundle_test";
  fs::remove_all(dir);
  ExperimentBundle b;
  b.name = "demo";
  b.reports = {sample_report()};
  b.summary = {{"a", "b"}, {{"1", "2"}}};
  const auto files = emit_bundle(b, ReportFormat::JsonLines, dir);
  ASSERT_EQ(files.size(), 2U);
  EXPECT_TRUE(fs::exists(dir / "sample_report.jsonl"));
  EXPECT_EQ(slurp(dir / "summary.jsonl"), "{\"a\":\"1\",\"b\":\"2\"}\n");
  EXPECT_EQ(table_csv(b.summary), "a,b\n1,2\n");
  fs::remove_all(dir);
}

TEST(Report, UnwritableDestinationThrows) {
  const fs::path file = fs::temp_directory_path() / "qpilot_not_a_dir";
  std::ofstream(file) << "x";
  EXPECT_THROW(emit_report(Report{}, ReportFormat::Csv, file / "sub"), std::runtime_error);
  fs::remove(file);
}

TEST(Report, FormatNames) {
  EXPECT_EQ(parse_report_format("csv"), ReportFormat::Csv);
  EXPECT_EQ(parse_report_format("jsonl"), ReportFormat::JsonLines);
  EXPECT_THROW(parse_report_format("xml"), std::invalid_argument);
}

}  // namespace
}  // namespace qpilot
