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

#include "qpilot/gates.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace qpilot {

using Qubit = int;

struct Gate {
  GateKind kind = GateKind::H;
  std::vector<Qubit> qubits;
  std::vector<double> params;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// An ordered gate list over `n_qubits` logical qubits.
///
/// Measure gates select the qubits that appear in the output distribution.
/// A circuit without any Measure gate is read out on every qubit.
struct Circuit {
  std::size_t n_qubits = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(std::size_t n) : n_qubits(n) {}

  Circuit& add(GateKind kind, std::vector<Qubit> qubits,
               std::vector<double> params = {}) {
    gates.push_back(Gate{kind, std::move(qubits), std::move(params)});
    return *this;
  }
  Circuit& add(Gate g) {
    gates.push_back(std::move(g));
    return *this;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

enum class ViolationKind {
  BadArity,
  BadParamCount,
  OutOfRange,
  DuplicateOperand,
  MeasureNotFinal,
};

struct Violation {
  std::size_t gate_index = 0;
  ViolationKind kind = ViolationKind::BadArity;
  std::string message;
};

/// All invariant violations of `c`; empty when the circuit is valid.
std::vector<Violation> validate_circuit(const Circuit& c);

/// Throws std::invalid_argument describing the first violation, if any.
void require_valid(const Circuit& c);

/// Qubits read out at the end, ascending.
std::vector<Qubit> measured_qubits(const Circuit& c);

bool has_measurements(const Circuit& c);

/// The circuit with every Measure gate removed.
Circuit without_measurements(const Circuit& c);

std::size_t count_gates(const Circuit& c, GateKind kind);

}  // namespace qpilot
