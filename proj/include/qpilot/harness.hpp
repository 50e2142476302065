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

#include "qpilot/benchmarks.hpp"
#include "qpilot/report.hpp"
#include "qpilot/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qpilot {

/// Discrete-event run of a scenario. At each instant the loop handles, in
/// order: thread completions, drift steps, trace samples, calibration
/// checks, arrivals, then one scheduling tick. Arrivals, drift, samples and
/// checks stop at the scenario duration; afterwards the loop drains until
/// every task has completed or been rejected.
Report run_scenario(const Scenario& s, const std::string& label = "run");

std::vector<std::string> experiment_names();

/// Throws std::invalid_argument for an unknown name.
ExperimentBundle run_experiment(const std::string& name, std::uint64_t seed = 1);

/// Ten GHZ(2) tasks at time zero on `n_qpus` 2x4 processors with at most
/// `degree` tasks per transaction.
Scenario runtime_scenario(std::size_t n_qpus, std::size_t degree, std::uint64_t seed);

/// One drifting 2x4 processor for a day with a GHZ(3) arrival every 10 s.
Scenario calibration_scenario(bool calibrate, std::uint64_t seed);

/// The 2x4 split-fidelity processor (right half better), with a small
/// per-run multiplicative jitter on every element.
QpuModel mapping_qpu(std::uint64_t seed, std::size_t run);

struct MappingTrial {
  BenchmarkKind benchmark = BenchmarkKind::GHZ;
  std::size_t run = 0;
  std::string arm;
  double fidelity_score = 0.0;
  double state_fidelity = 0.0;
  std::size_t swaps = 0;
  double max_trace_deviation = 0.0;
};

/// QFT, GHZ, DJ and BV on 4 qubits, four runs, fidelity-aware and naive.
std::vector<MappingTrial> mapping_trials(std::uint64_t seed);

/// Noisy state fidelity of a mapped physical circuit on `qpu`, simulated on
/// the qubits it touches.
MappingTrial evaluate_mapping(const Circuit& physical, const QpuModel& qpu);

}  // namespace qpilot
