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

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qpilot {
namespace {

std::string join(const std::vector<PhysicalQubit>& qs) {
  std::string out;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    out += (i ? " " : "") + std::to_string(qs[i]);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    out += c == '"' ? std::string("\"\"") : std::string(1, c);
  }
  return out + "\"";
}

std::string opt(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : "";
}

std::string opt(const std::optional<Seconds>& v) {
  return v ? std::to_string(*v) : "";
}

void write_file(const std::filesystem::path& path, const std::string& content,
                std::vector<std::filesystem::path>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
  written.push_back(path);
}

Json task_json(const TaskRecord& t) {
  return Json{{"record", "task"},
              {"id", t.id},
              {"type", task_type_name(t.task_type)},
              {"status", t.status == TaskStatus::Completed ? "completed" : "rejected"},
              {"qpu", t.qpu_id},
              {"submit", t.submit_time},
              {"start", t.start_time},
              {"end", t.end_time},
              {"fidelity_score", t.fidelity_score},
              {"footprint", t.footprint},
              {"reason", t.reason}};
}

template <typename T>
std::optional<T> optional_field(const Json& j, const char* key) {
  if (j.at(key).is_null()) {
    return std::nullopt;
  }
  return j.at(key).get<T>();
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") {
    return ReportFormat::Csv;
  }
  if (name == "jsonl" || name == "json" || name == "json-lines") {
    return ReportFormat::JsonLines;
  }
  throw std::invalid_argument("unknown report format '" + name + "' (csv or jsonl)");
}

std::string tasks_csv(const Report& r) {
  std::string out =
      "id,type,status,qpu,submit,start,end,fidelity_score,footprint,reason\n";
  for (const auto& t : r.tasks) {
    out += std::to_string(t.id) + "," + std::string(task_type_name(t.task_type)) + "," +
           (t.status == TaskStatus::Completed ? "completed" : "rejected") + "," +
           csv_field(t.qpu_id) + "," + std::to_string(t.submit_time) + "," +
           std::to_string(t.start_time) + "," + std::to_string(t.end_time) + "," +
           format_fixed(t.fidelity_score) + "," + join(t.footprint) + "," +
           csv_field(t.reason) + "\n";
  }
  return out;
}

std::string windows_csv(const Report& r) {
  std::string out = "start,end,completed,rejected\n";
  for (const auto& w : r.windows) {
    out += std::to_string(w.start) + "," + std::to_string(w.end) + "," +
           std::to_string(w.completed) + "," + std::to_string(w.rejected) + "\n";
  }
  return out;
}

std::string scores_csv(const Report& r) {
  std::string out = "time,qpu,mapped_score,min_single,min_two,min_measure\n";
  for (const auto& s : r.scores) {
    out += std::to_string(s.time) + "," + csv_field(s.qpu) + "," +
           format_fixed(s.mapped_score) + "," + format_fixed(s.min_single) + "," +
           format_fixed(s.min_two) + "," + format_fixed(s.min_measure) + "\n";
  }
  return out;
}

std::string checks_csv(const Report& r) {
  std::string out =
      "time,qpu,flagged_qubits,flagged_edges,task,calibrated_at,next_interval,"
      "min_single_raw,min_two_raw,min_measure_raw,min_single_effective,"
      "min_two_effective,min_measure_effective\n";
  for (const auto& c : r.checks) {
    out += std::to_string(c.time) + "," + csv_field(c.qpu) + "," +
           std::to_string(c.flagged_qubits) + "," + std::to_string(c.flagged_edges) +
           "," + opt(c.task) + "," + opt(c.calibrated_at) + "," +
           std::to_string(c.next_interval) + "," + format_fixed(c.min_single_raw) + "," +
           format_fixed(c.min_two_raw) + "," + format_fixed(c.min_measure_raw) + "," +
           format_fixed(c.min_single_effective) + "," +
           format_fixed(c.min_two_effective) + "," +
           format_fixed(c.min_measure_effective) + "\n";
  }
  return out;
}

std::string table_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    out += (i ? "," : "") + csv_field(t.header[i]);
  }
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += (i ? "," : "") + csv_field(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string table_jsonl(const Table& t) {
  std::string out;
  for (const auto& row : t.rows) {
    Json j = Json::object();
    for (std::size_t i = 0; i < t.header.size() && i < row.size(); ++i) {
      j[t.header[i]] = row[i];
    }
    out += j.dump() + "\n";
  }
  return out;
}

std::string report_jsonl(const Report& r) {
  std::string out;
  const auto line = [&](const Json& j) { out += j.dump() + "\n"; };
  line(Json{{"record", "summary"},
            {"label", r.label},
            {"submitted", r.submitted},
            {"completed", r.completed},
            {"rejected", r.rejected},
            {"makespan", r.makespan}});
  for (const auto& t : r.tasks) {
    line(task_json(t));
  }
  for (const auto& w : r.windows) {
    line(Json{{"record", "window"},
              {"start", w.start},
              {"end", w.end},
              {"completed", w.completed},
              {"rejected", w.rejected}});
  }
  for (const auto& s : r.trace) {
    line(Json{{"record", "trace"}, {"time", s.time}, {"element", s.element}, {"value", s.value}});
  }
  for (const auto& s : r.scores) {
    line(Json{{"record", "score"},
              {"time", s.time},
              {"qpu", s.qpu},
              {"mapped_score", s.mapped_score},
              {"min_single", s.min_single},
              {"min_two", s.min_two},
              {"min_measure", s.min_measure}});
  }
  for (const auto& c : r.checks) {
    line(Json{{"record", "check"},
              {"time", c.time},
              {"qpu", c.qpu},
              {"flagged_qubits", c.flagged_qubits},
              {"flagged_edges", c.flagged_edges},
              {"task", c.task ? Json(*c.task) : Json(nullptr)},
              {"calibrated_at", c.calibrated_at ? Json(*c.calibrated_at) : Json(nullptr)},
              {"next_interval", c.next_interval},
              {"min_single_raw", c.min_single_raw},
              {"min_two_raw", c.min_two_raw},
              {"min_measure_raw", c.min_measure_raw},
              {"min_single_effective", c.min_single_effective},
              {"min_two_effective", c.min_two_effective},
              {"min_measure_effective", c.min_measure_effective}});
  }
  for (const auto& e : r.events) {
    line(Json{{"record", "event"}, {"data", Json::parse(e)}});
  }
  return out;
}

Report parse_report_jsonl(const std::string& text) {
  Report r;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (raw.empty()) {
      continue;
    }
    const Json j = parse_config_text(raw, "report line " + std::to_string(line_no));
    const std::string kind = j.at("record").get<std::string>();
    if (kind == "summary") {
      r.label = j.at("label").get<std::string>();
      r.submitted = j.at("submitted").get<std::size_t>();
      r.completed = j.at("completed").get<std::size_t>();
      r.rejected = j.at("rejected").get<std::size_t>();
      r.makespan = j.at("makespan").get<Seconds>();
    } else if (kind == "task") {
      TaskRecord t;
      t.id = j.at("id").get<TaskId>();
      t.task_type = j.at("type") == "calibration" ? TaskType::Calibration : TaskType::General;
      t.status = j.at("status") == "completed" ? TaskStatus::Completed : TaskStatus::Rejected;
      t.qpu_id = j.at("qpu").get<std::string>();
      t.submit_time = j.at("submit").get<Seconds>();
      t.start_time = j.at("start").get<Seconds>();
      t.end_time = j.at("end").get<Seconds>();
      t.fidelity_score = j.at("fidelity_score").get<double>();
      t.footprint = j.at("footprint").get<std::vector<PhysicalQubit>>();
      t.reason = j.at("reason").get<std::string>();
      r.tasks.push_back(std::move(t));
    } else if (kind == "window") {
      r.windows.push_back({j.at("start").get<Seconds>(), j.at("end").get<Seconds>(),
                           j.at("completed").get<std::size_t>(),
                           j.at("rejected").get<std::size_t>()});
    } else if (kind == "trace") {
      r.trace.push_back({j.at("time").get<Seconds>(), j.at("element").get<std::string>(),
                         j.at("value").get<double>()});
    } else if (kind == "score") {
      r.scores.push_back({j.at("time").get<Seconds>(), j.at("qpu").get<std::string>(),
                          j.at("mapped_score").get<double>(),
                          j.at("min_single").get<double>(), j.at("min_two").get<double>(),
                          j.at("min_measure").get<double>()});
    } else if (kind == "check") {
      CheckRecord c;
      c.time = j.at("time").get<Seconds>();
      c.qpu = j.at("qpu").get<std::string>();
      c.flagged_qubits = j.at("flagged_qubits").get<std::size_t>();
      c.flagged_edges = j.at("flagged_edges").get<std::size_t>();
      c.task = optional_field<TaskId>(j, "task");
      c.calibrated_at = optional_field<Seconds>(j, "calibrated_at");
      c.next_interval = j.at("next_interval").get<Seconds>();
      c.min_single_raw = j.at("min_single_raw").get<double>();
      c.min_two_raw = j.at("min_two_raw").get<double>();
      c.min_measure_raw = j.at("min_measure_raw").get<double>();
      c.min_single_effective = j.at("min_single_effective").get<double>();
      c.min_two_effective = j.at("min_two_effective").get<double>();
      c.min_measure_effective = j.at("min_measure_effective").get<double>();
      r.checks.push_back(std::move(c));
    } else if (kind == "event") {
      r.events.push_back(j.at("data").dump());
    } else {
      throw std::runtime_error("report line " + std::to_string(line_no) +
                               ": unknown record '" + kind + "'");
    }
  }
  return r;
}

Report load_report_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_report_jsonl(buf.str());
}

std::vector<std::filesystem::path> emit_report(const Report& r, ReportFormat format,
                                               const std::filesystem::path& dir,
                                               const std::string& prefix) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::vector<std::filesystem::path> written;
  if (format == ReportFormat::JsonLines) {
    write_file(dir / (prefix + "report.jsonl"), report_jsonl(r), written);
    return written;
  }
  write_file(dir / (prefix + "tasks.csv"), tasks_csv(r), written);
  write_file(dir / (prefix + "windows.csv"), windows_csv(r), written);
  write_file(dir / (prefix + "trace.csv"), fidelity_trace_csv(r.trace), written);
  write_file(dir / (prefix + "scores.csv"), scores_csv(r), written);
  write_file(dir / (prefix + "checks.csv"), checks_csv(r), written);
  std::string events;
  for (const auto& e : r.events) {
    events += e + "\n";
  }
  write_file(dir / (prefix + "events.jsonl"), events, written);
  return written;
}

std::vector<std::filesystem::path> emit_bundle(const ExperimentBundle& b,
                                               ReportFormat format,
                                               const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  for (const auto& r : b.reports) {
    auto more = emit_report(r, format, dir, r.label + "_");
    written.insert(written.end(), more.begin(), more.end());
  }
  if (format == ReportFormat::Csv) {
    write_file(dir / "summary.csv", table_csv(b.summary), written);
  } else {
    write_file(dir / "summary.jsonl", table_jsonl(b.summary), written);
  }
  return written;
}

}  // namespace qpilot
