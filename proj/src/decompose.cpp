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

#include "qpilot/decompose.hpp"

#include <numbers>
#include <stdexcept>

namespace qpilot {
namespace {

constexpr double kPi = std::numbers::pi;

void u3(Circuit& out, Qubit q, double theta, double phi, double lambda) {
  out.add(GateKind::U3, {q}, {theta, phi, lambda});
}

void h(Circuit& out, Qubit q) { u3(out, q, kPi / 2, 0.0, kPi); }
void phase(Circuit& out, Qubit q, double angle) { u3(out, q, 0.0, 0.0, angle); }
void sdg(Circuit& out, Qubit q) { phase(out, q, -kPi / 2); }
void s(Circuit& out, Qubit q) { phase(out, q, kPi / 2); }
void t(Circuit& out, Qubit q) { phase(out, q, kPi / 4); }
void tdg(Circuit& out, Qubit q) { phase(out, q, -kPi / 4); }

void cnot(Circuit& out, Qubit control, Qubit target) {
  h(out, target);
  out.add(GateKind::CZ, {control, target});
  h(out, target);
}

// exp(i * alpha * Z(a) Z(b)), up to global phase.
void zz_rotation(Circuit& out, Qubit a, Qubit b, double alpha) {
  cnot(out, a, b);
  phase(out, b, -2.0 * alpha);
  cnot(out, a, b);
}

void single_qubit(const Gate& g, Circuit& out) {
  const auto m = gate_matrix<double>(g.kind, g.params);
  const Matrix2<double> m2 = m;
  const auto [theta, phi, lambda] = u3_angles(m2);
  u3(out, g.qubits[0], theta, phi, lambda);
}

}  // namespace

bool is_native(GateKind kind) {
  return kind == GateKind::U3 || kind == GateKind::CZ ||
         kind == GateKind::Measure;
}

bool is_native(const Circuit& c) {
  for (const Gate& g : c.gates) {
    if (!is_native(g.kind)) {
      return false;
    }
  }
  return true;
}

void append_native(const Gate& g, Circuit& out) {
  const auto& q = g.qubits;
  switch (g.kind) {
    case GateKind::U3:
    case GateKind::CZ:
    case GateKind::Measure:
      out.gates.push_back(g);
      return;
    case GateKind::H:
    case GateKind::S:
    case GateKind::T:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
      single_qubit(g, out);
      return;
    case GateKind::CNOT:
      cnot(out, q[0], q[1]);
      return;
    case GateKind::SWAP:
      cnot(out, q[0], q[1]);
      cnot(out, q[1], q[0]);
      cnot(out, q[0], q[1]);
      return;
    case GateKind::CR: {
      const double theta = g.params[0];
      phase(out, q[0], theta / 2);
      cnot(out, q[0], q[1]);
      phase(out, q[1], -theta / 2);
      cnot(out, q[0], q[1]);
      phase(out, q[1], theta / 2);
      return;
    }
    case GateKind::CU: {
      const double theta = g.params[0];
      const double phi = g.params[1];
      const double lambda = g.params[2];
      const double gamma = g.params[3];
      phase(out, q[0], gamma + (lambda + phi) / 2);
      phase(out, q[1], (lambda - phi) / 2);
      cnot(out, q[0], q[1]);
      u3(out, q[1], -theta / 2, 0.0, -(phi + lambda) / 2);
      cnot(out, q[0], q[1]);
      u3(out, q[1], theta / 2, phi, 0.0);
      return;
    }
    case GateKind::ISWAP: {
      const double alpha = g.params[0] / 4;
      // XX part: conjugate the ZZ rotation by H on both qubits.
      h(out, q[0]);
      h(out, q[1]);
      zz_rotation(out, q[0], q[1], alpha);
      h(out, q[0]);
      h(out, q[1]);
      // YY part: conjugate by (S H) on both qubits, since S H Z H S^dag = Y.
      sdg(out, q[0]);
      h(out, q[0]);
      sdg(out, q[1]);
      h(out, q[1]);
      zz_rotation(out, q[0], q[1], alpha);
      h(out, q[0]);
      s(out, q[0]);
      h(out, q[1]);
      s(out, q[1]);
      return;
    }
    case GateKind::Toffoli: {
      const Qubit a = q[0];
      const Qubit b = q[1];
      const Qubit c = q[2];
      h(out, c);
      cnot(out, b, c);
      tdg(out, c);
      cnot(out, a, c);
      t(out, c);
      cnot(out, b, c);
      tdg(out, c);
      cnot(out, a, c);
      t(out, b);
      t(out, c);
      h(out, c);
      cnot(out, a, b);
      t(out, a);
      tdg(out, b);
      cnot(out, a, b);
      return;
    }
  }
  throw std::invalid_argument("decompose_to_native: no rule for gate " +
                              std::string(gate_name(g.kind)));
}

Circuit decompose_to_native(const Circuit& c) {
  require_valid(c);
  Circuit out(c.n_qubits);
  for (const Gate& g : c.gates) {
    append_native(g, out);
  }
  return out;
}

}  // namespace qpilot
