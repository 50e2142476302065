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

#include "qpilot/qpu_config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qpilot {
namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + end, '\n'));
}

std::vector<double> element_values(const ConfigObject& obj, const std::string& key,
                                   std::size_t count) {
  const Json& v = obj.raw(key);
  if (v.is_number()) {
    return std::vector<double>(count, v.get<double>());
  }
  if (!v.is_array()) {
    obj.fail(key, "must be a number or an array of numbers");
  }
  if (v.size() != count) {
    obj.fail(key, "needs " + std::to_string(count) + " values, got " +
                      std::to_string(v.size()));
  }
  std::vector<double> out;
  for (const Json& x : v) {
    if (!x.is_number()) {
      obj.fail(key, "must contain only numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

std::size_t positive_size(const ConfigObject& obj, const std::string& key) {
  const std::int64_t v = obj.integer(key);
  if (v <= 0) {
    obj.fail(key, "must be positive");
  }
  return static_cast<std::size_t>(v);
}

Topology topology_from_json(const ConfigObject& t) {
  const std::string kind = t.string("kind");
  try {
    if (kind == "grid") {
      t.only({"kind", "rows", "cols"});
      return make_grid(positive_size(t, "rows"), positive_size(t, "cols"));
    }
    if (kind == "line" || kind == "ring") {
      t.only({"kind", "qubits"});
      const std::size_t n = positive_size(t, "qubits");
      return kind == "line" ? make_line(n) : make_ring(n);
    }
    if (kind == "graph") {
      t.only({"kind", "qubits", "edges"});
      std::vector<Edge> edges;
      const Json& list = t.raw("edges");
      if (!list.is_array()) {
        t.fail("edges", "must be an array of [a, b] pairs");
      }
      for (const Json& e : list) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer()) {
          t.fail("edges", "must be an array of [a, b] pairs");
        }
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
      return Topology(positive_size(t, "qubits"), std::move(edges));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(t.path() + ": " + e.what());
  }
  t.fail("kind", "unknown topology kind '" + kind + "'");
}

FidelitySpec fidelity_from_json(const ConfigObject& f, const Topology& topo) {
  if (f.has("split")) {
    f.only({"split"});
    const ConfigObject s = f.object("split");
    s.only({"left_single", "right_single", "left_two", "right_two", "left_measure",
            "right_measure"});
    const double ls = s.number("left_single");
    const double rs = s.number("right_single");
    return FidelitySpec::split(topo, ls, rs, s.number("left_two"), s.number("right_two"),
                               s.number("left_measure", ls), s.number("right_measure", rs));
  }
  f.only({"single", "two", "measure"});
  return {element_values(f, "single", topo.size()),
          element_values(f, "two", topo.edges().size()),
          f.has("measure") ? element_values(f, "measure", topo.size())
                           : std::vector<double>(topo.size(), 1.0)};
}

ElementDrift element_drift(const ConfigObject& d) {
  d.only({"tau", "floor"});
  return {d.number("tau"), d.number("floor")};
}

}  // namespace

Json parse_config_text(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ConfigError(source + ":" + std::to_string(line_of(text, e.byte)) +
                      ": parse error: " + e.what());
  }
}

Json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

ConfigObject::ConfigObject(const Json& j, std::string path)
    : j_(&j), path_(std::move(path)) {
  if (!j.is_object()) {
    throw ConfigError((path_.empty() ? std::string("config") : path_) +
                      " must be an object");
  }
}

std::string ConfigObject::field(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

void ConfigObject::fail(const std::string& key, const std::string& what) const {
  throw ConfigError("field '" + field(key) + "' " + what);
}

bool ConfigObject::has(const std::string& key) const { return j_->contains(key); }

const Json& ConfigObject::raw(const std::string& key) const {
  if (!has(key)) {
    fail(key, "is required");
  }
  return j_->at(key);
}

double ConfigObject::number(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_number()) {
    fail(key, "must be a number");
  }
  return v.get<double>();
}

double ConfigObject::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::int64_t ConfigObject::integer(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_number_integer()) {
    fail(key, "must be an integer");
  }
  return v.get<std::int64_t>();
}

std::int64_t ConfigObject::integer(const std::string& key, std::int64_t fallback) const {
  return has(key) ? integer(key) : fallback;
}

bool ConfigObject::boolean(const std::string& key, bool fallback) const {
  if (!has(key)) {
    return fallback;
  }
  const Json& v = raw(key);
  if (!v.is_boolean()) {
    fail(key, "must be true or false");
  }
  return v.get<bool>();
}

std::string ConfigObject::string(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_string()) {
    fail(key, "must be a string");
  }
  return v.get<std::string>();
}

std::string ConfigObject::string(const std::string& key,
                                 const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

ConfigObject ConfigObject::object(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_object()) {
    fail(key, "must be an object");
  }
  return ConfigObject(v, field(key));
}

std::vector<ConfigObject> ConfigObject::objects(const std::string& key) const {
  const Json& v = raw(key);
  if (!v.is_array()) {
    fail(key, "must be an array");
  }
  std::vector<ConfigObject> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_object()) {
      fail(key, "entry " + std::to_string(i) + " must be an object");
    }
    out.emplace_back(v[i], field(key) + "[" + std::to_string(i) + "]");
  }
  return out;
}

void ConfigObject::only(std::initializer_list<std::string_view> allowed) const {
  for (const auto& [key, value] : j_->items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown field '" + field(key) + "'");
    }
  }
}

QpuConfig qpu_from_json(const ConfigObject& obj, std::uint64_t default_seed) {
  obj.only({"id", "topology", "fidelity", "drift"});
  const std::string id = obj.string("id");
  if (id.empty()) {
    obj.fail("id", "must not be empty");
  }
  Topology topo = topology_from_json(obj.object("topology"));
  const FidelitySpec fid = fidelity_from_json(obj.object("fidelity"), topo);

  DriftParams drift;
  drift.single = drift.two = drift.measure = ElementDrift{1e12, 0.0};
  drift.seed = default_seed;
  const bool drift_enabled = obj.has("drift");
  bool seed_pinned = false;
  if (drift_enabled) {
    const ConfigObject d = obj.object("drift");
    d.only({"single", "two", "measure", "jitter_sigma", "seed"});
    drift.single = element_drift(d.object("single"));
    drift.two = element_drift(d.object("two"));
    drift.measure = element_drift(d.object("measure"));
    drift.jitter_sigma = d.number("jitter_sigma", 0.0);
    const std::int64_t seed = d.integer("seed", static_cast<std::int64_t>(default_seed));
    if (seed < 0) {
      d.fail("seed", "must be non-negative");
    }
    drift.seed = static_cast<std::uint64_t>(seed);
    seed_pinned = d.has("seed");
  }
  try {
    return {build_qpu(id, std::move(topo), fid, drift), drift_enabled, seed_pinned};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(obj.path() + ": " + e.what());
  }
}

CalibrationPolicy policy_from_json(const ConfigObject& obj) {
  obj.only({"enabled", "single_threshold", "double_threshold", "interval_max",
            "interval_min", "interval_step", "calib_duration"});
  CalibrationPolicy p;
  p.enabled = obj.boolean("enabled", p.enabled);
  p.single_threshold = obj.number("single_threshold", p.single_threshold);
  p.double_threshold = obj.number("double_threshold", p.double_threshold);
  p.interval_max = obj.integer("interval_max", p.interval_max);
  p.interval_min = obj.integer("interval_min", p.interval_min);
  p.interval_step = obj.integer("interval_step", p.interval_step);
  p.calib_duration = obj.integer("calib_duration", p.calib_duration);
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(obj.path() + ": " + e.what());
  }
  return p;
}

QpuConfig load_qpu_config(const std::filesystem::path& path) {
  const Json j = load_config_file(path);
  const ConfigObject root(j, "");
  if (root.has("qpu")) {
    root.only({"qpu", "calibration"});
    return qpu_from_json(root.object("qpu"), 0);
  }
  return qpu_from_json(root, 0);
}

CalibrationPolicy load_policy(const std::filesystem::path& path) {
  const Json j = load_config_file(path);
  const ConfigObject root(j, "");
  if (root.has("calibration")) {
    return policy_from_json(root.object("calibration"));
  }
  return {};
}

std::vector<FidelitySample> sample_fidelities(const QpuModel& qpu, Seconds now) {
  std::vector<FidelitySample> out;
  const auto& f = qpu.fidelity;
  for (std::size_t q = 0; q < qpu.size(); ++q) {
    const std::string base = qpu.id + "/q" + std::to_string(q);
    out.push_back({now, base + "/single", f.single_gate[q]});
    out.push_back({now, base + "/measure", f.measure[q]});
  }
  const auto& edges = qpu.topology.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out.push_back({now,
                   qpu.id + "/e" + std::to_string(edges[e].first) + "-" +
                       std::to_string(edges[e].second) + "/two",
                   f.two_gate[e]});
  }
  return out;
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string fidelity_trace_csv(const std::vector<FidelitySample>& samples) {
  std::string out = "time,element,value\n";
  for (const auto& s : samples) {
    out += std::to_string(s.time) + "," + s.element + "," + format_fixed(s.value) + "\n";
  }
  return out;
}

}  // namespace qpilot
