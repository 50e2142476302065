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

#include "qpilot/gates.hpp"

#include <algorithm>
#include <cctype>

namespace qpilot {

std::size_t gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::H:
    case GateKind::S:
    case GateKind::T:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::U3:
    case GateKind::Measure:
      return 1;
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SWAP:
    case GateKind::CU:
    case GateKind::CR:
    case GateKind::ISWAP:
      return 2;
    case GateKind::Toffoli:
      return 3;
  }
  throw std::invalid_argument("gate_arity: unknown gate kind");
}

std::size_t gate_param_count(GateKind kind) {
  switch (kind) {
    case GateKind::U3:
      return 3;
    case GateKind::CU:
      return 4;
    case GateKind::CR:
    case GateKind::ISWAP:
      return 1;
    default:
      return 0;
  }
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::U3: return "U3";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::SWAP: return "SWAP";
    case GateKind::CU: return "CU";
    case GateKind::Toffoli: return "TOFFOLI";
    case GateKind::CR: return "CR";
    case GateKind::ISWAP: return "ISWAP";
    case GateKind::Measure: return "MEASURE";
  }
  return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (upper == "CX") {
    return GateKind::CNOT;
  }
  if (upper == "CCX") {
    return GateKind::Toffoli;
  }
  for (GateKind k : kAllGateKinds) {
    if (gate_name(k) == upper) {
      return k;
    }
  }
  return std::nullopt;
}

std::array<double, 3> u3_angles(const Matrix2<double>& u) {
  constexpr double eps = 1e-12;
  const double c = std::abs(u(0, 0));
  const double s = std::abs(u(1, 0));
  const double theta = 2.0 * std::atan2(s, c);
  double gamma = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  if (c > eps) {
    gamma = std::arg(u(0, 0));
    if (s > eps) {
      phi = std::arg(u(1, 0)) - gamma;
      lambda = std::arg(-u(0, 1)) - gamma;
    } else {
      lambda = std::arg(u(1, 1)) - gamma;
    }
  } else {
    gamma = std::arg(u(1, 0));
    lambda = std::arg(-u(0, 1)) - gamma;
  }
  return {theta, phi, lambda};
}

}  // namespace qpilot
