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

// qpilot command line: run scenarios, reproduce the experiments, map and
// simulate single circuits.

#include "qpilot/circuit_io.hpp"
#include "qpilot/decompose.hpp"
#include "qpilot/harness.hpp"
#include "qpilot/mapper.hpp"
#include "qpilot/noisy_sim.hpp"
#include "qpilot/qpu_config.hpp"
#include "qpilot/report.hpp"
#include "qpilot/scenario.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Options {
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "csv";
  std::optional<std::size_t> beam;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

/// Writes `text` to `<out_dir>/<name>` when an output directory is set,
/// otherwise to stdout.
void deliver(const Options& o, const std::string& name, const std::string& text) {
  if (o.out_dir.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(o.out_dir);
  write_file(fs::path(o.out_dir) / name, text);
  std::cerr << "wrote " << (fs::path(o.out_dir) / name).string() << "\n";
}

fs::path output_dir(const Options& o, const std::string& fallback) {
  const fs::path dir = o.out_dir.empty() ? fs::path(fallback) : fs::path(o.out_dir);
  fs::create_directories(dir);
  return dir;
}

void print_written(const std::vector<fs::path>& paths) {
  for (const auto& p : paths) {
    std::cerr << "wrote " << p.string() << "\n";
  }
}

int cmd_run(const Options& o, const std::string& config) {
  qpilot::Scenario s = qpilot::load_scenario(config);
  if (o.seed) {
    qpilot::reseed(s, *o.seed);
  }
  if (o.beam) {
    s.scheduler.beam = *o.beam;
  }
  const qpilot::Report r = qpilot::run_scenario(s, fs::path(config).stem().string());
  print_written(qpilot::emit_report(r, qpilot::parse_report_format(o.format),
                                    output_dir(o, "qpilot_out")));
  std::printf("submitted=%zu completed=%zu rejected=%zu makespan=%lld\n", r.submitted,
              r.completed, r.rejected, static_cast<long long>(r.makespan));
  return 0;
}

int cmd_experiment(const Options& o, const std::string& name) {
  const qpilot::ExperimentBundle b = qpilot::run_experiment(name, o.seed.value_or(1));
  print_written(qpilot::emit_bundle(b, qpilot::parse_report_format(o.format),
                                    output_dir(o, "qpilot_" + name)));
  std::cout << qpilot::table_csv(b.summary);
  return 0;
}

int cmd_map(const Options& o, const std::string& circuit, const std::string& qpu_config) {
  const qpilot::Circuit c = qpilot::load_circuit(circuit);
  const qpilot::QpuConfig q = qpilot::load_qpu_config(qpu_config);
  const qpilot::MappedCircuit m =
      qpilot::map_circuit(c, q.model, o.beam.value_or(qpilot::kDefaultBeam));
  deliver(o, "mapped.qc", qpilot::format_circuit(m.circuit));
  deliver(o, "mapping.txt", qpilot::dump_mapping_path(m.path));
  const auto eq = qpilot::assert_equivalent(c, m.circuit, m.final_placement);
  std::fprintf(stderr, "fidelity_score=%.12g swaps=%zu equivalent=%s tv=%.3g\n",
               m.fidelity_score, m.swap_count, eq.pass ? "yes" : "no", eq.tv_distance);
  return eq.pass ? 0 : 1;
}

int cmd_simulate(const Options& o, const std::string& circuit, const std::string& noise) {
  const qpilot::Circuit c = qpilot::decompose_to_native(qpilot::load_circuit(circuit));
  qpilot::SimResult r;
  if (noise.empty()) {
    r = qpilot::simulate_ideal(c);
  } else {
    const qpilot::QpuConfig q = qpilot::load_qpu_config(noise);
    if (c.n_qubits > q.model.size()) {
      throw std::invalid_argument("circuit uses " + std::to_string(c.n_qubits) +
                                  " qubits but processor '" + q.model.id + "' has " +
                                  std::to_string(q.model.size()));
    }
    std::vector<qpilot::PhysicalQubit> members;
    for (std::size_t i = 0; i < c.n_qubits; ++i) {
      members.push_back(static_cast<qpilot::PhysicalQubit>(i));
    }
    r = qpilot::simulate_noisy(c, qpilot::noise_from_qpu(q.model).restrict(members));
  }
  deliver(o, "distribution.csv", qpilot::distribution_csv(r.distribution));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qpilot: fidelity-aware mapping, co-scheduling and calibration simulator"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  std::uint64_t seed = 0;
  std::size_t beam = 0;
  app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--out-dir", o.out_dir, "Directory for output files");
  app.add_option("--format", o.format, "Report format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl", "json-lines"}));
  app.add_option("--beam", beam, "Embedding beam width")->check(CLI::PositiveNumber);

  std::string config;
  auto* run = app.add_subcommand("run", "Run a scenario config");
  run->add_option("config", config, "Scenario file")->required()->check(CLI::ExistingFile);

  std::string experiment;
  auto* exp = app.add_subcommand("experiment", "Run a built-in experiment");
  exp->add_option("name", experiment, "runtime, calibration or mapping")->required();

  std::string circuit;
  std::string qpu_config;
  auto* map = app.add_subcommand("map", "Map a circuit onto a processor");
  map->add_option("circuit", circuit, "Circuit file")->required()->check(CLI::ExistingFile);
  map->add_option("qpu", qpu_config, "Processor config")->required()->check(CLI::ExistingFile);

  std::string noise;
  auto* sim = app.add_subcommand("simulate", "Simulate a circuit");
  sim->add_option("circuit", circuit, "Circuit file")->required()->check(CLI::ExistingFile);
  sim->add_option("--noise", noise, "Processor config supplying the noise")
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);
  if (app.count("--seed") > 0) {
    o.seed = seed;
  }
  if (app.count("--beam") > 0) {
    o.beam = beam;
  }

  try {
    if (run->parsed()) {
      return cmd_run(o, config);
    }
    if (exp->parsed()) {
      return cmd_experiment(o, experiment);
    }
    if (map->parsed()) {
      return cmd_map(o, circuit, qpu_config);
    }
    return cmd_simulate(o, circuit, noise);
  } catch (const std::exception& e) {
    std::cerr << "qpilot: error: " << e.what() << "\n";
    return 1;
  }
}
