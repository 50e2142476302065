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

#include "qpilot/benchmarks.hpp"
#include "qpilot/circuit_io.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace qpilot {
namespace {

std::uint64_t derive_seed(std::uint64_t master, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master),
                    static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 gen(seq);
  return gen();
}

Seconds non_negative(const ConfigObject& o, const std::string& key, Seconds fallback) {
  const Seconds v = o.integer(key, fallback);
  if (v < 0) {
    o.fail(key, "must be non-negative");
  }
  return v;
}

Seconds positive(const ConfigObject& o, const std::string& key, Seconds fallback) {
  const Seconds v = o.integer(key, fallback);
  if (v <= 0) {
    o.fail(key, "must be positive");
  }
  return v;
}

TaskTemplate template_from_json(const ConfigObject& t,
                                const std::filesystem::path& base_dir) {
  t.only({"name", "benchmark", "qubits", "secret", "balanced", "circuit", "file"});
  TaskTemplate out;
  out.name = t.string("name");
  const int sources = static_cast<int>(t.has("benchmark")) +
                      static_cast<int>(t.has("circuit")) + static_cast<int>(t.has("file"));
  if (sources != 1) {
    t.fail("name", "needs exactly one of 'benchmark', 'circuit' or 'file'");
  }
  try {
    if (t.has("benchmark")) {
      const auto kind = parse_benchmark_kind(t.string("benchmark"));
      if (!kind) {
        t.fail("benchmark", "is not one of QFT, GHZ, DJ, BV");
      }
      const std::int64_t n = t.integer("qubits");
      if (n <= 0) {
        t.fail("qubits", "must be positive");
      }
      BenchmarkParams params;
      params.secret = t.string("secret", "");
      params.balanced = t.boolean("balanced", true);
      out.program = generate_benchmark(*kind, static_cast<std::size_t>(n), params);
    } else if (t.has("circuit")) {
      out.program = parse_circuit(t.string("circuit"));
    } else {
      std::filesystem::path file = t.string("file");
      if (file.is_relative()) {
        file = base_dir / file;
      }
      out.program = load_circuit(file);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("field '" + t.path() + "': " + e.what());
  }
  return out;
}

std::size_t template_index(const ConfigObject& o, const std::string& key,
                           const std::vector<TaskTemplate>& templates) {
  const std::string name = o.string(key);
  for (std::size_t i = 0; i < templates.size(); ++i) {
    if (templates[i].name == name) {
      return i;
    }
  }
  o.fail(key, "names unknown template '" + name + "'");
}

}  // namespace

void reseed(Scenario& s, std::uint64_t seed) {
  s.seed = seed;
  for (std::size_t i = 0; i < s.qpus.size(); ++i) {
    QpuConfig& q = s.qpus[i];
    if (!q.seed_pinned) {
      q.model.drift.seed = derive_seed(seed, i);
      q.model.rng.seed(q.model.drift.seed);
    }
  }
}

Scenario scenario_from_json(const Json& j, const std::filesystem::path& base_dir) {
  const ConfigObject root(j, "");
  root.only({"seed", "duration", "drift_step", "qpus", "workload", "policy", "report"});
  Scenario s;
  const std::int64_t seed = root.integer("seed", 0);
  if (seed < 0) {
    root.fail("seed", "must be non-negative");
  }
  s.duration = root.integer("duration");
  if (s.duration <= 0) {
    root.fail("duration", "must be positive");
  }
  s.drift_step = positive(root, "drift_step", s.drift_step);

  if (!root.has("qpus")) {
    root.fail("qpus", "is required (at least one processor)");
  }
  std::set<std::string> ids;
  for (const ConfigObject& q : root.objects("qpus")) {
    s.qpus.push_back(qpu_from_json(q, 0));
    if (!ids.insert(s.qpus.back().model.id).second) {
      q.fail("id", "duplicates processor '" + s.qpus.back().model.id + "'");
    }
  }
  if (s.qpus.empty()) {
    root.fail("qpus", "must list at least one processor");
  }
  reseed(s, static_cast<std::uint64_t>(seed));

  if (root.has("policy")) {
    const ConfigObject p = root.object("policy");
    p.only({"calibration", "beam", "max_tasks_per_transaction", "min_fidelity"});
    if (p.has("calibration")) {
      s.scheduler.calibration = policy_from_json(p.object("calibration"));
    }
    s.scheduler.beam = static_cast<std::size_t>(positive(p, "beam", kDefaultBeam));
    s.scheduler.max_tasks_per_transaction =
        static_cast<std::size_t>(non_negative(p, "max_tasks_per_transaction", 0));
    s.scheduler.min_fidelity = p.number("min_fidelity", 0.0);
    if (!(s.scheduler.min_fidelity >= 0.0 && s.scheduler.min_fidelity <= 1.0)) {
      p.fail("min_fidelity", "must be in [0, 1]");
    }
  }

  if (root.has("workload")) {
    const ConfigObject w = root.object("workload");
    w.only({"templates", "interval", "start", "count", "arrivals", "shots", "gate_seconds",
            "measure_seconds"});
    for (const ConfigObject& t : w.objects("templates")) {
      s.templates.push_back(template_from_json(t, base_dir));
      for (std::size_t i = 0; i + 1 < s.templates.size(); ++i) {
        if (s.templates[i].name == s.templates.back().name) {
          t.fail("name", "duplicates template '" + s.templates.back().name + "'");
        }
      }
    }
    s.timing.shots = static_cast<std::size_t>(positive(w, "shots", 1000));
    s.timing.gate_seconds = w.number("gate_seconds", s.timing.gate_seconds);
    s.timing.measure_seconds = w.number("measure_seconds", s.timing.measure_seconds);
    if (s.timing.gate_seconds < 0.0 || s.timing.measure_seconds < 0.0) {
      w.fail("gate_seconds", "and measure_seconds must be non-negative");
    }
    if (w.has("interval")) {
      if (s.templates.empty()) {
        w.fail("templates", "must not be empty when arrivals are periodic");
      }
      const Seconds interval = positive(w, "interval", 1);
      const Seconds start = non_negative(w, "start", 0);
      const std::int64_t count = w.integer("count", -1);
      for (std::int64_t k = 0; count < 0 || k < count; ++k) {
        const Seconds t = start + k * interval;
        if (t >= s.duration) {
          break;
        }
        s.arrivals.push_back({t, static_cast<std::size_t>(k) % s.templates.size(), {}});
      }
    }
    if (w.has("arrivals")) {
      for (const ConfigObject& a : w.objects("arrivals")) {
        a.only({"time", "template", "qpu"});
        Arrival arrival;
        arrival.time = a.integer("time");
        if (arrival.time < 0) {
          a.fail("time", "must be non-negative");
        }
        arrival.template_index = template_index(a, "template", s.templates);
        if (a.has("qpu")) {
          arrival.qpu_id = a.string("qpu");
          if (ids.count(*arrival.qpu_id) == 0) {
            a.fail("qpu", "names unknown processor '" + *arrival.qpu_id + "'");
          }
        }
        s.arrivals.push_back(std::move(arrival));
      }
    }
    std::stable_sort(s.arrivals.begin(), s.arrivals.end(),
                     [](const Arrival& a, const Arrival& b) { return a.time < b.time; });
  }

  if (root.has("report")) {
    const ConfigObject r = root.object("report");
    r.only({"trace_interval", "window", "score_template"});
    s.trace_interval = positive(r, "trace_interval", s.trace_interval);
    s.window = positive(r, "window", s.window);
    if (r.has("score_template")) {
      s.score_template = template_index(r, "score_template", s.templates);
    }
  }
  if (!s.score_template && !s.templates.empty()) {
    s.score_template = 0;
  }
  return s;
}

Scenario scenario_from_text(std::string_view text, const std::string& source,
                            const std::filesystem::path& base_dir) {
  return scenario_from_json(parse_config_text(text, source), base_dir);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open scenario file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_text(buf.str(), path.string(), path.parent_path());
}

}  // namespace qpilot
