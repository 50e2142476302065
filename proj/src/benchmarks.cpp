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

#include "qpilot/benchmarks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpilot {

std::string_view benchmark_name(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::QFT: return "QFT";
    case BenchmarkKind::GHZ: return "GHZ";
    case BenchmarkKind::DJ: return "DJ";
    case BenchmarkKind::BV: return "BV";
  }
  return "?";
}

std::optional<BenchmarkKind> parse_benchmark_kind(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  for (auto k : {BenchmarkKind::QFT, BenchmarkKind::GHZ, BenchmarkKind::DJ,
                 BenchmarkKind::BV}) {
    if (benchmark_name(k) == upper) {
      return k;
    }
  }
  return std::nullopt;
}

Circuit generate_benchmark(BenchmarkKind kind, std::size_t n,
                           const BenchmarkParams& params) {
  const std::size_t min_size = kind == BenchmarkKind::QFT ? 1 : 2;
  if (n < min_size || n > kMaxBenchmarkQubits) {
    throw std::invalid_argument("generate_benchmark: unsupported size " +
                                std::to_string(n) + " for " +
                                std::string(benchmark_name(kind)));
  }
  Circuit c(n);
  const auto q = [](std::size_t i) { return static_cast<Qubit>(i); };
  switch (kind) {
    case BenchmarkKind::GHZ:
      c.add(GateKind::H, {0});
      for (std::size_t i = 0; i + 1 < n; ++i) {
        c.add(GateKind::CNOT, {q(i), q(i + 1)});
      }
      return c;
    case BenchmarkKind::QFT:
      for (std::size_t j = 0; j < n; ++j) {
        c.add(GateKind::H, {q(j)});
        for (std::size_t k = j + 1; k < n; ++k) {
          const double angle =
              std::numbers::pi / std::pow(2.0, static_cast<double>(k - j));
          c.add(GateKind::CR, {q(k), q(j)}, {angle});
        }
      }
      return c;
    case BenchmarkKind::BV:
    case BenchmarkKind::DJ: {
      const std::size_t data = n - 1;
      const Qubit ancilla = q(n - 1);
      std::string pattern;
      if (kind == BenchmarkKind::BV) {
        pattern = params.secret;
        if (pattern.empty()) {
          for (std::size_t i = 0; i < data; ++i) {
            pattern.push_back(i % 2 == 0 ? '1' : '0');
          }
        }
        if (pattern.size() != data ||
            pattern.find_first_not_of("01") != std::string::npos) {
          throw std::invalid_argument(
              "generate_benchmark: BV secret must be a bitstring of length " +
              std::to_string(data));
        }
      } else {
        pattern.assign(data, '0');
        if (params.balanced) {
          pattern[0] = '1';
        }
      }
      c.add(GateKind::X, {ancilla});
      for (std::size_t i = 0; i < n; ++i) {
        c.add(GateKind::H, {q(i)});
      }
      for (std::size_t i = 0; i < data; ++i) {
        if (pattern[i] == '1') {
          c.add(GateKind::CNOT, {q(i), ancilla});
        }
      }
      for (std::size_t i = 0; i < data; ++i) {
        c.add(GateKind::H, {q(i)});
      }
      for (std::size_t i = 0; i < data; ++i) {
        c.add(GateKind::Measure, {q(i)});
      }
      return c;
    }
  }
  throw std::invalid_argument("generate_benchmark: unknown kind");
}

}  // namespace qpilot
