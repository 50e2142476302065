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

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qpilot {

/// Thrown by the text and config loaders; carries the 1-based line number
/// (0 when the error is not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Circuit text format, one statement per line:
//
//   # comment (also allowed after a statement)
//   QUBITS 4              optional; defaults to max operand + 1
//   H 0
//   CNOT 0,1
//   U3 2 1.5708,0,3.14159
//   CR 1,0 0.785398
//   MEASURE 0
//
// Kind names are case-insensitive; CX and CCX are accepted aliases.
Circuit parse_circuit(std::string_view text);
Circuit load_circuit(const std::filesystem::path& path);

/// Text form accepted by parse_circuit. Parameters are written with 17
/// significant digits so parse_circuit(format_circuit(c)) == c.
std::string format_circuit(const Circuit& c);

}  // namespace qpilot
