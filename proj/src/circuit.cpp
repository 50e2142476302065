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

#include "qpilot/circuit.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qpilot {

std::vector<Violation> validate_circuit(const Circuit& c) {
  std::vector<Violation> out;
  std::vector<bool> measured(c.n_qubits, false);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    const std::string where =
        "gate " + std::to_string(i) + " (" + std::string(gate_name(g.kind)) + ")";
    if (g.qubits.size() != gate_arity(g.kind)) {
      out.push_back({i, ViolationKind::BadArity,
                     where + ": expects " + std::to_string(gate_arity(g.kind)) +
                         " operand(s), got " + std::to_string(g.qubits.size())});
    }
    if (g.params.size() != gate_param_count(g.kind)) {
      out.push_back({i, ViolationKind::BadParamCount,
                     where + ": expects " +
                         std::to_string(gate_param_count(g.kind)) +
                         " parameter(s), got " + std::to_string(g.params.size())});
    }
    bool in_range = true;
    for (Qubit q : g.qubits) {
      if (q < 0 || static_cast<std::size_t>(q) >= c.n_qubits) {
        in_range = false;
        out.push_back({i, ViolationKind::OutOfRange,
                       where + ": qubit " + std::to_string(q) +
                           " out of range for " + std::to_string(c.n_qubits) +
                           "-qubit circuit"});
      }
    }
    const std::set<Qubit> distinct(g.qubits.begin(), g.qubits.end());
    if (distinct.size() != g.qubits.size()) {
      out.push_back({i, ViolationKind::DuplicateOperand,
                     where + ": duplicate operand"});
    }
    if (!in_range) {
      continue;
    }
    if (g.kind == GateKind::Measure) {
      for (Qubit q : g.qubits) {
        measured[static_cast<std::size_t>(q)] = true;
      }
    } else {
      for (Qubit q : g.qubits) {
        if (measured[static_cast<std::size_t>(q)]) {
          out.push_back({i, ViolationKind::MeasureNotFinal,
                         where + ": acts on qubit " + std::to_string(q) +
                             " after it was measured"});
        }
      }
    }
  }
  return out;
}

void require_valid(const Circuit& c) {
  const auto violations = validate_circuit(c);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid circuit: " + violations.front().message);
  }
}

bool has_measurements(const Circuit& c) {
  return std::any_of(c.gates.begin(), c.gates.end(),
                     [](const Gate& g) { return g.kind == GateKind::Measure; });
}

std::vector<Qubit> measured_qubits(const Circuit& c) {
  std::vector<Qubit> out;
  if (!has_measurements(c)) {
    for (std::size_t q = 0; q < c.n_qubits; ++q) {
      out.push_back(static_cast<Qubit>(q));
    }
    return out;
  }
  std::set<Qubit> seen;
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Measure) {
      seen.insert(g.qubits.begin(), g.qubits.end());
    }
  }
  return {seen.begin(), seen.end()};
}

Circuit without_measurements(const Circuit& c) {
  Circuit out(c.n_qubits);
  for (const Gate& g : c.gates) {
    if (g.kind != GateKind::Measure) {
      out.gates.push_back(g);
    }
  }
  return out;
}

std::size_t count_gates(const Circuit& c, GateKind kind) {
  return static_cast<std::size_t>(
      std::count_if(c.gates.begin(), c.gates.end(),
                    [kind](const Gate& g) { return g.kind == kind; }));
}

}  // namespace qpilot
