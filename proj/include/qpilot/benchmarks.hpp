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

#include "qpilot/circuit.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace qpilot {

enum class BenchmarkKind { QFT, GHZ, DJ, BV };

std::string_view benchmark_name(BenchmarkKind kind);
std::optional<BenchmarkKind> parse_benchmark_kind(std::string_view name);

struct BenchmarkParams {
  /// BV secret over the data qubits, qubit 0 first. Defaults to "1010...".
  std::string secret;
  /// DJ oracle: balanced is f(x) = x0, constant is f(x) = 0.
  bool balanced = true;
};

inline constexpr std::size_t kMaxBenchmarkQubits = 24;

/// Textbook benchmark circuits.
///
/// GHZ(n):  H(0), then CNOT(i, i+1) for i < n-1. Read out on every qubit.
/// QFT(n):  H(j) followed by CR(pi / 2^(k-j)) on (k, j) for k > j; no final
///          reversal swaps. Read out on every qubit.
/// BV(n):   n-1 data qubits plus an ancilla on qubit n-1; only the data
///          qubits are measured and the outcome equals the secret.
/// DJ(n):   same register layout as BV; the outcome is all zeros for the
///          constant oracle and "10...0" for the balanced one.
Circuit generate_benchmark(BenchmarkKind kind, std::size_t n_qubits,
                           const BenchmarkParams& params = {});

}  // namespace qpilot
