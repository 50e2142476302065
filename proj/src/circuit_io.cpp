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

#include "qpilot/circuit_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qpilot {
namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

long parse_int(const std::string& s, std::size_t line) {
  long v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "expected integer, got '" + s + "'");
  }
  return v;
}

double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) {
      throw ParseError(line, "expected number, got '" + s + "'");
    }
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line, "expected number, got '" + s + "'");
  }
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  Circuit c;
  std::optional<std::size_t> declared;
  int max_operand = -1;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) {
      raw.erase(hash);
    }
    std::istringstream fields(raw);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) {
      tokens.push_back(t);
    }
    if (tokens.empty()) {
      continue;
    }
    std::string head = tokens[0];
    std::transform(head.begin(), head.end(), head.begin(),
                   [](unsigned char ch) { return std::toupper(ch); });
    if (head == "QUBITS") {
      if (tokens.size() != 2) {
        throw ParseError(line_no, "QUBITS takes exactly one count");
      }
      const long n = parse_int(tokens[1], line_no);
      if (n < 1) {
        throw ParseError(line_no, "QUBITS must be positive");
      }
      declared = static_cast<std::size_t>(n);
      continue;
    }
    const auto kind = parse_gate_kind(tokens[0]);
    if (!kind) {
      throw ParseError(line_no, "unknown gate '" + tokens[0] + "'");
    }
    if (tokens.size() < 2 || tokens.size() > 3) {
      throw ParseError(line_no, "expected 'KIND q0[,q1[,q2]] [param,...]'");
    }
    Gate g;
    g.kind = *kind;
    for (const auto& q : split(tokens[1], ',')) {
      const long v = parse_int(q, line_no);
      if (v < 0) {
        throw ParseError(line_no, "negative qubit index");
      }
      g.qubits.push_back(static_cast<Qubit>(v));
      max_operand = std::max(max_operand, static_cast<int>(v));
    }
    if (tokens.size() == 3) {
      for (const auto& p : split(tokens[2], ',')) {
        g.params.push_back(parse_double(p, line_no));
      }
    }
    if (g.qubits.size() != gate_arity(g.kind)) {
      throw ParseError(line_no, std::string(gate_name(g.kind)) + " expects " +
                                    std::to_string(gate_arity(g.kind)) +
                                    " operand(s)");
    }
    if (g.params.size() != gate_param_count(g.kind)) {
      throw ParseError(line_no, std::string(gate_name(g.kind)) + " expects " +
                                    std::to_string(gate_param_count(g.kind)) +
                                    " parameter(s)");
    }
    c.gates.push_back(std::move(g));
  }
  const std::size_t needed = static_cast<std::size_t>(max_operand + 1);
  if (declared) {
    if (*declared < needed) {
      throw ParseError(0, "QUBITS " + std::to_string(*declared) +
                              " is smaller than the highest operand " +
                              std::to_string(max_operand));
    }
    c.n_qubits = *declared;
  } else {
    c.n_qubits = needed;
  }
  const auto violations = validate_circuit(c);
  if (!violations.empty()) {
    throw ParseError(0, violations.front().message);
  }
  return c;
}

Circuit load_circuit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open circuit file " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str());
}

std::string format_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "QUBITS " << c.n_qubits << '\n';
  for (const Gate& g : c.gates) {
    out << gate_name(g.kind) << ' ';
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      out << (i ? "," : "") << g.qubits[i];
    }
    if (!g.params.empty()) {
      out << ' ';
      for (std::size_t i = 0; i < g.params.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", g.params[i]);
        out << (i ? "," : "") << buf;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qpilot
