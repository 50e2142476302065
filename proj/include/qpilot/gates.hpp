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

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qpilot {

enum class GateKind {
  H,
  S,
  T,
  X,
  Y,
  Z,
  U3,
  CNOT,
  CZ,
  SWAP,
  CU,
  Toffoli,
  CR,
  ISWAP,
  Measure,
};

inline constexpr std::array<GateKind, 15> kAllGateKinds = {
    GateKind::H,    GateKind::S,    GateKind::T,       GateKind::X,
    GateKind::Y,    GateKind::Z,    GateKind::U3,      GateKind::CNOT,
    GateKind::CZ,   GateKind::SWAP, GateKind::CU,      GateKind::Toffoli,
    GateKind::CR,   GateKind::ISWAP, GateKind::Measure};

/// Number of qubit operands the kind acts on.
std::size_t gate_arity(GateKind kind);

/// Number of real parameters the kind takes.
///
/// U3 takes (theta, phi, lambda). CU takes (theta, phi, lambda, gamma) and
/// controls the single-qubit unitary exp(i*gamma) * U3(theta, phi, lambda).
/// CR and ISWAP take one angle.
std::size_t gate_param_count(GateKind kind);

std::string_view gate_name(GateKind kind);

/// Case-insensitive inverse of gate_name. Accepts "CX" for CNOT and "CCX" for
/// Toffoli.
std::optional<GateKind> parse_gate_kind(std::string_view name);

template <typename Scalar>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Matrix2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

/// The single-qubit U3 unitary
///   [[cos(t/2),            -e^{il} sin(t/2)],
///    [e^{ip} sin(t/2),  e^{i(l+p)} cos(t/2)]].
template <typename Scalar>
Matrix2<Scalar> u3_matrix(Scalar theta, Scalar phi, Scalar lambda) {
  using C = std::complex<Scalar>;
  const Scalar c = std::cos(theta / 2);
  const Scalar s = std::sin(theta / 2);
  Matrix2<Scalar> m;
  m << C(c, 0), -std::polar(s, lambda), std::polar(s, phi),
      std::polar(c, lambda + phi);
  return m;
}

/// Unitary matrix of a gate. Two-qubit matrices use the first operand as the
/// more significant index bit; Toffoli has both controls ahead of the target.
template <typename Scalar = double>
ComplexMatrix<Scalar> gate_matrix(GateKind kind, std::span<const double> params) {
  using C = std::complex<Scalar>;
  if (kind == GateKind::Measure) {
    throw std::invalid_argument("gate_matrix: Measure has no unitary");
  }
  if (params.size() != gate_param_count(kind)) {
    throw std::invalid_argument("gate_matrix: " + std::string(gate_name(kind)) +
                                " expects " +
                                std::to_string(gate_param_count(kind)) +
                                " parameter(s), got " +
                                std::to_string(params.size()));
  }
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  const C i(0, 1);
  ComplexMatrix<Scalar> m;
  switch (kind) {
    case GateKind::H:
      m.resize(2, 2);
      m << r, r, r, -r;
      return m;
    case GateKind::S:
      m.resize(2, 2);
      m << 1, 0, 0, i;
      return m;
    case GateKind::T:
      m.resize(2, 2);
      m << 1, 0, 0, std::polar(Scalar(1), std::numbers::pi_v<Scalar> / 4);
      return m;
    case GateKind::X:
      m.resize(2, 2);
      m << 0, 1, 1, 0;
      return m;
    case GateKind::Y:
      m.resize(2, 2);
      m << 0, -i, i, 0;
      return m;
    case GateKind::Z:
      m.resize(2, 2);
      m << 1, 0, 0, -1;
      return m;
    case GateKind::U3:
      return u3_matrix<Scalar>(Scalar(params[0]), Scalar(params[1]),
                               Scalar(params[2]));
    case GateKind::CNOT:
      m = ComplexMatrix<Scalar>::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
      return m;
    case GateKind::CZ:
      m = ComplexMatrix<Scalar>::Identity(4, 4);
      m(3, 3) = -1;
      return m;
    case GateKind::SWAP:
      m = ComplexMatrix<Scalar>::Zero(4, 4);
      m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
      return m;
    case GateKind::CU: {
      m = ComplexMatrix<Scalar>::Identity(4, 4);
      const Matrix2<Scalar> u =
          std::polar(Scalar(1), Scalar(params[3])) *
          u3_matrix<Scalar>(Scalar(params[0]), Scalar(params[1]),
                            Scalar(params[2]));
      m.template block<2, 2>(2, 2) = u;
      return m;
    }
    case GateKind::Toffoli:
      m = ComplexMatrix<Scalar>::Identity(8, 8);
      m(6, 6) = m(7, 7) = 0;
      m(6, 7) = m(7, 6) = 1;
      return m;
    case GateKind::CR:
      m = ComplexMatrix<Scalar>::Identity(4, 4);
      m(3, 3) = std::polar(Scalar(1), Scalar(params[0]));
      return m;
    case GateKind::ISWAP: {
      const Scalar c = std::cos(Scalar(params[0]) / 2);
      const Scalar s = std::sin(Scalar(params[0]) / 2);
      m = ComplexMatrix<Scalar>::Identity(4, 4);
      m(1, 1) = m(2, 2) = c;
      m(1, 2) = m(2, 1) = i * s;
      return m;
    }
    case GateKind::Measure:
      break;
  }
  throw std::invalid_argument("gate_matrix: unknown gate kind");
}

/// U3 angles reproducing a 2x2 unitary up to global phase.
std::array<double, 3> u3_angles(const Matrix2<double>& u);

}  // namespace qpilot
