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

#include "qpilot/noisy_sim.hpp"

#include "qpilot/decompose.hpp"
#include "qpilot/gates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace qpilot {
namespace {

using Cd = std::complex<double>;

constexpr double kTraceTolerance = 1e-9;

// Index offsets of the 2^k local basis states of `qubits`; operand 0 is the
// most significant local bit.
struct Layout {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> bases;
};

Layout layout(const std::vector<Qubit>& qubits, std::size_t n) {
  const std::size_t k = qubits.size();
  std::vector<std::size_t> masks;
  std::size_t all = 0;
  for (Qubit q : qubits) {
    masks.push_back(std::size_t{1} << (n - 1 - static_cast<std::size_t>(q)));
    all |= masks.back();
  }
  Layout out;
  for (std::size_t j = 0; j < (std::size_t{1} << k); ++j) {
    std::size_t off = 0;
    for (std::size_t t = 0; t < k; ++t) {
      if (j & (std::size_t{1} << (k - 1 - t))) {
        off |= masks[t];
      }
    }
    out.offsets.push_back(off);
  }
  for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
    if ((b & all) == 0) {
      out.bases.push_back(b);
    }
  }
  return out;
}

// m <- U m on the operand subspace.
void apply_left(Eigen::MatrixXcd& m, const Eigen::MatrixXcd& u, const Layout& l) {
  const auto d = static_cast<Eigen::Index>(l.offsets.size());
  Eigen::VectorXcd v(d);
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    for (std::size_t base : l.bases) {
      for (Eigen::Index j = 0; j < d; ++j) {
        v(j) = m(static_cast<Eigen::Index>(base + l.offsets[j]), col);
      }
      const Eigen::VectorXcd w = u * v;
      for (Eigen::Index j = 0; j < d; ++j) {
        m(static_cast<Eigen::Index>(base + l.offsets[j]), col) = w(j);
      }
    }
  }
}

// m <- m U^dagger on the operand subspace.
void apply_right_adjoint(Eigen::MatrixXcd& m, const Eigen::MatrixXcd& u,
                         const Layout& l) {
  const auto d = static_cast<Eigen::Index>(l.offsets.size());
  const Eigen::MatrixXcd uc = u.conjugate();
  Eigen::VectorXcd v(d);
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    for (std::size_t base : l.bases) {
      for (Eigen::Index j = 0; j < d; ++j) {
        v(j) = m(row, static_cast<Eigen::Index>(base + l.offsets[j]));
      }
      const Eigen::VectorXcd w = uc * v;
      for (Eigen::Index j = 0; j < d; ++j) {
        m(row, static_cast<Eigen::Index>(base + l.offsets[j])) = w(j);
      }
    }
  }
}

// rho <- (1 - p) rho + p (I/d (x) Tr_operands rho).
void depolarize(Eigen::MatrixXcd& rho, double p, const Layout& l) {
  if (p == 0.0) {
    return;
  }
  const std::size_t d = l.offsets.size();
  for (std::size_t br : l.bases) {
    for (std::size_t bc : l.bases) {
      Cd s = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        s += rho(static_cast<Eigen::Index>(br + l.offsets[j]),
                 static_cast<Eigen::Index>(bc + l.offsets[j]));
      }
      s /= static_cast<double>(d);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          Cd& e = rho(static_cast<Eigen::Index>(br + l.offsets[i]),
                      static_cast<Eigen::Index>(bc + l.offsets[j]));
          e *= 1.0 - p;
          if (i == j) {
            e += p * s;
          }
        }
      }
    }
  }
}

void check_circuit(const Circuit& c) {
  require_valid(c);
  if (c.n_qubits > kMaxSimQubits) {
    throw std::invalid_argument("simulator supports at most " +
                                std::to_string(kMaxSimQubits) + " qubits, got " +
                                std::to_string(c.n_qubits));
  }
  for (const Gate& g : c.gates) {
    if (!is_native(g.kind)) {
      throw std::invalid_argument("simulator requires native gates, got " +
                                  std::string(gate_name(g.kind)));
    }
  }
}

double trace_deviation(const Eigen::MatrixXcd& rho) {
  return std::abs(rho.trace() - Cd(1.0, 0.0));
}

SimResult run(const Circuit& c, const NoiseSpec* noise) {
  check_circuit(c);
  const std::size_t n = c.n_qubits;
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  SimResult r;
  r.state.n_qubits = n;
  r.state.rho = Eigen::MatrixXcd::Zero(dim, dim);
  r.state.rho(0, 0) = 1.0;

  const auto step_done = [&](const char* what) {
    const double dev = trace_deviation(r.state.rho);
    r.max_trace_deviation = std::max(r.max_trace_deviation, dev);
    if (dev > kTraceTolerance) {
      throw std::runtime_error(std::string("trace drifted by ") +
                               std::to_string(dev) + " after " + what);
    }
  };

  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Measure) {
      continue;
    }
    const Layout l = layout(g.qubits, n);
    const Eigen::MatrixXcd u = gate_matrix(g.kind, g.params);
    apply_left(r.state.rho, u, l);
    apply_right_adjoint(r.state.rho, u, l);
    step_done("gate");
    if (noise == nullptr) {
      continue;
    }
    double p = 0.0;
    if (g.kind == GateKind::U3) {
      p = noise->single_gate.at(static_cast<std::size_t>(g.qubits[0]));
    } else {
      const auto it = noise->two_gate.find(make_edge(g.qubits[0], g.qubits[1]));
      if (it == noise->two_gate.end()) {
        throw std::invalid_argument("qubits " + std::to_string(g.qubits[0]) + "," +
                                    std::to_string(g.qubits[1]) +
                                    " are not coupled in the noise model");
      }
      p = it->second;
    }
    depolarize(r.state.rho, p, l);
    step_done("depolarizing channel");
  }

  std::vector<double> flip;
  if (noise != nullptr) {
    flip = noise->measure_flip;
  }
  const Eigen::VectorXd diag = r.state.rho.diagonal().real();
  r.distribution = readout_distribution(diag, n, readout_of(c), flip);
  return r;
}

void check_probabilities(const std::vector<double>& ps, const char* what) {
  for (double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(std::string(what) + " probability " +
                                  std::to_string(p) + " is outside [0, 1]");
    }
  }
}

}  // namespace

NoiseSpec NoiseSpec::none(std::size_t n_qubits) {
  NoiseSpec out{std::vector<double>(n_qubits, 0.0), {}, std::vector<double>(n_qubits, 0.0)};
  for (std::size_t a = 0; a < n_qubits; ++a) {
    for (std::size_t b = a + 1; b < n_qubits; ++b) {
      out.two_gate[make_edge(static_cast<PhysicalQubit>(a), static_cast<PhysicalQubit>(b))] =
          0.0;
    }
  }
  return out;
}

NoiseSpec NoiseSpec::restrict(const std::vector<PhysicalQubit>& members) const {
  NoiseSpec out;
  for (PhysicalQubit q : members) {
    out.single_gate.push_back(single_gate.at(static_cast<std::size_t>(q)));
    out.measure_flip.push_back(measure_flip.at(static_cast<std::size_t>(q)));
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const auto it = two_gate.find(make_edge(members[i], members[j]));
      if (it != two_gate.end()) {
        out.two_gate[make_edge(static_cast<PhysicalQubit>(i),
                               static_cast<PhysicalQubit>(j))] = it->second;
      }
    }
  }
  return out;
}

NoiseSpec noise_from_device(const DeviceView& device) {
  NoiseSpec out;
  for (double f : device.single_gate) {
    out.single_gate.push_back(1.0 - f);
  }
  for (double f : device.measure) {
    out.measure_flip.push_back(1.0 - f);
  }
  const auto& edges = device.topology.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out.two_gate[edges[e]] = 1.0 - device.two_gate[e];
  }
  check_probabilities(out.single_gate, "single-gate depolarizing");
  check_probabilities(out.measure_flip, "measurement flip");
  return out;
}

NoiseSpec noise_from_qpu(const QpuModel& qpu) {
  return noise_from_device(device_view(qpu));
}

std::string Distribution::bitstring(std::size_t index) const {
  const std::size_t m = qubits.size();
  std::string s(m, '0');
  for (std::size_t k = 0; k < m; ++k) {
    if (index & (std::size_t{1} << (m - 1 - k))) {
      s[k] = '1';
    }
  }
  return s;
}

std::vector<Qubit> readout_of(const Circuit& c) {
  if (has_measurements(c)) {
    return measured_qubits(c);
  }
  std::vector<Qubit> all;
  for (std::size_t q = 0; q < c.n_qubits; ++q) {
    all.push_back(static_cast<Qubit>(q));
  }
  return all;
}

Distribution readout_distribution(const Eigen::VectorXd& diagonal,
                                  std::size_t n_qubits,
                                  const std::vector<Qubit>& qubits,
                                  const std::vector<double>& flip) {
  const std::size_t m = qubits.size();
  Distribution d{qubits, std::vector<double>(std::size_t{1} << m, 0.0)};
  for (Eigen::Index x = 0; x < diagonal.size(); ++x) {
    std::size_t y = 0;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t bit = n_qubits - 1 - static_cast<std::size_t>(qubits[k]);
      if ((static_cast<std::size_t>(x) >> bit) & 1U) {
        y |= std::size_t{1} << (m - 1 - k);
      }
    }
    d.probs[y] += diagonal(x);
  }
  if (flip.empty()) {
    return d;
  }
  for (std::size_t k = 0; k < m; ++k) {
    const double e = flip.at(static_cast<std::size_t>(qubits[k]));
    if (e == 0.0) {
      continue;
    }
    const std::size_t bit = std::size_t{1} << (m - 1 - k);
    std::vector<double> next(d.probs.size());
    for (std::size_t y = 0; y < d.probs.size(); ++y) {
      next[y] = (1.0 - e) * d.probs[y] + e * d.probs[y ^ bit];
    }
    d.probs = std::move(next);
  }
  return d;
}

Eigen::VectorXcd simulate_statevector(const Circuit& c) {
  check_circuit(c);
  const std::size_t n = c.n_qubits;
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(std::size_t{1} << n), 1);
  psi(0, 0) = 1.0;
  for (const Gate& g : c.gates) {
    if (g.kind != GateKind::Measure) {
      apply_left(psi, gate_matrix(g.kind, g.params), layout(g.qubits, n));
    }
  }
  return psi.col(0);
}

SimResult simulate_ideal(const Circuit& c) { return run(c, nullptr); }

SimResult simulate_noisy(const Circuit& c, const NoiseSpec& noise) {
  check_probabilities(noise.single_gate, "single-gate depolarizing");
  check_probabilities(noise.measure_flip, "measurement flip");
  for (const auto& [edge, p] : noise.two_gate) {
    check_probabilities({p}, "two-gate depolarizing");
  }
  if (noise.single_gate.size() < c.n_qubits || noise.measure_flip.size() < c.n_qubits) {
    throw std::invalid_argument("noise spec covers fewer qubits than the circuit");
  }
  return run(c, &noise);
}

double state_fidelity(const Eigen::VectorXcd& psi, const DensityState& rho) {
  if (psi.size() != rho.rho.rows() || rho.rho.rows() != rho.rho.cols()) {
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  }
  const Cd f = psi.dot(rho.rho * psi);
  return std::clamp(f.real(), 0.0, 1.0);
}

double tv_distance(const Distribution& a, const Distribution& b) {
  if (a.probs.size() != b.probs.size()) {
    throw std::invalid_argument("tv_distance: distributions differ in size");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.probs.size(); ++i) {
    sum += std::abs(a.probs[i] - b.probs[i]);
  }
  return 0.5 * sum;
}

EquivalenceResult assert_equivalent(const Circuit& original, const Circuit& mapped,
                                    const Placement& final_placement) {
  const Distribution logical = simulate_ideal(decompose_to_native(original)).distribution;

  Circuit physical = mapped;
  std::vector<Qubit> labels;
  if (has_measurements(mapped)) {
    CompactCircuit cc = compact_circuit(mapped);
    physical = std::move(cc.circuit);
    labels = std::move(cc.qubits);
  } else {
    for (std::size_t q = 0; q < mapped.n_qubits; ++q) {
      labels.push_back(static_cast<Qubit>(q));
    }
  }
  Distribution measured = simulate_ideal(physical).distribution;
  for (Qubit& q : measured.qubits) {
    q = labels[static_cast<std::size_t>(q)];
  }

  if (logical.qubits.size() != measured.qubits.size()) {
    throw std::invalid_argument("assert_equivalent: read-out sizes differ");
  }
  const std::size_t m = logical.qubits.size();
  std::vector<std::size_t> position(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto l = static_cast<std::size_t>(logical.qubits[k]);
    if (l >= final_placement.size()) {
      throw std::invalid_argument("assert_equivalent: placement too short");
    }
    const auto it = std::find(measured.qubits.begin(), measured.qubits.end(),
                              final_placement[l]);
    if (it == measured.qubits.end()) {
      throw std::invalid_argument("assert_equivalent: logical " + std::to_string(l) +
                                  " is not read out by the mapped circuit");
    }
    position[k] = static_cast<std::size_t>(it - measured.qubits.begin());
  }
  Distribution relabelled{logical.qubits, std::vector<double>(logical.probs.size())};
  for (std::size_t y = 0; y < relabelled.probs.size(); ++y) {
    std::size_t z = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if ((y >> (m - 1 - k)) & 1U) {
        z |= std::size_t{1} << (m - 1 - position[k]);
      }
    }
    relabelled.probs[y] = measured.probs[z];
  }
  const double tv = tv_distance(logical, relabelled);
  return {tv < 1e-9, tv};
}

CompactCircuit compact_circuit(const Circuit& c) {
  std::set<Qubit> used;
  for (const Gate& g : c.gates) {
    used.insert(g.qubits.begin(), g.qubits.end());
  }
  CompactCircuit out;
  out.qubits.assign(used.begin(), used.end());
  std::vector<Qubit> index(c.n_qubits, -1);
  for (std::size_t i = 0; i < out.qubits.size(); ++i) {
    index[static_cast<std::size_t>(out.qubits[i])] = static_cast<Qubit>(i);
  }
  out.circuit.n_qubits = out.qubits.size();
  for (Gate g : c.gates) {
    for (Qubit& q : g.qubits) {
      q = index[static_cast<std::size_t>(q)];
    }
    out.circuit.add(std::move(g));
  }
  return out;
}

std::string distribution_csv(const Distribution& d) {
  std::string out = "bitstring,probability\n";
  char buf[64];
  for (std::size_t i = 0; i < d.probs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12f", d.probs[i]);
    out += d.bitstring(i) + "," + buf + "\n";
  }
  return out;
}

}  // namespace qpilot
