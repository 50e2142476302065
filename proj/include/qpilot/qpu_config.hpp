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

#include "qpilot/calibration.hpp"
#include "qpilot/qpu.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qpilot {

using Json = nlohmann::ordered_json;

/// Parse or validation failure in a config file. The message names the line
/// (parse errors) or the dotted field path (validation errors).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses JSON text; syntax errors become ConfigError with the line number.
Json parse_config_text(std::string_view text, const std::string& source);
Json load_config_file(const std::filesystem::path& path);

/// Typed, path-aware access to one JSON object of a config.
class ConfigObject {
 public:
  ConfigObject(const Json& j, std::string path);

  const std::string& path() const { return path_; }
  bool has(const std::string& key) const;
  const Json& raw(const std::string& key) const;
  std::string field(const std::string& key) const;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string string(const std::string& key) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  ConfigObject object(const std::string& key) const;
  std::vector<ConfigObject> objects(const std::string& key) const;

  /// Throws ConfigError for any key outside `allowed`.
  void only(std::initializer_list<std::string_view> allowed) const;
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

 private:
  const Json* j_;
  std::string path_;
};

struct QpuConfig {
  QpuModel model;
  bool drift_enabled = false;
  /// The drift seed came from the file rather than the default.
  bool seed_pinned = false;
};

/// Reads one processor description:
///
///   { "id": "qpu0",
///     "topology": {"kind": "grid", "rows": 2, "cols": 4},
///     "fidelity": {"single": 0.99, "two": 0.97, "measure": 0.98},
///     "drift": {"single": {"tau": 112500, "floor": 0.8}, "two": {...},
///               "measure": {...}, "jitter_sigma": 0.0, "seed": 7} }
///
/// Topology kinds: grid (rows, cols), line (qubits), ring (qubits), graph
/// (qubits, edges). Fidelities are scalars, per-element arrays, or a
/// "split" object with left_/right_ single, two and measure values.
QpuConfig qpu_from_json(const ConfigObject& obj, std::uint64_t default_seed);

/// Defaults to the built-in policy when `obj` lacks a key.
CalibrationPolicy policy_from_json(const ConfigObject& obj);

/// A file holding either one processor object or {"qpu": {...}} with an
/// optional "calibration" policy next to it.
QpuConfig load_qpu_config(const std::filesystem::path& path);
CalibrationPolicy load_policy(const std::filesystem::path& path);

struct FidelitySample {
  Seconds time = 0;
  std::string element;
  double value = 0.0;
};

/// One sample per element: "<qpu>/q<i>/single", "<qpu>/q<i>/measure",
/// "<qpu>/e<a>-<b>/two".
std::vector<FidelitySample> sample_fidelities(const QpuModel& qpu, Seconds now);

/// CSV with header "time,element,value".
std::string fidelity_trace_csv(const std::vector<FidelitySample>& samples);

std::string format_fixed(double v, int digits = 10);

}  // namespace qpilot
