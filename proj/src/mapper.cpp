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

#include "qpilot/mapper.hpp"

#include "qpilot/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace qpilot {
namespace {

constexpr int kVacant = -1;

std::size_t idx(PhysicalQubit q) { return static_cast<std::size_t>(q); }

struct Candidate {
  Placement placement;
  std::vector<int> occupant;
  std::vector<std::size_t> vertices;
  double score = 1.0;
};

double vertex_score(const DagVertex& v, const Placement& p, const DeviceView& d) {
  double s = d.edge_fidelity(p[idx(v.qubits[0])], p[idx(v.qubits[1])]);
  for (const auto* list : {&v.before, &v.after}) {
    for (const Gate& g : *list) {
      s *= d.single_gate[idx(p[idx(g.qubits[0])])];
    }
  }
  return s;
}

void seat(Candidate& c, Qubit l, PhysicalQubit q) {
  c.placement[idx(l)] = q;
  c.occupant[idx(q)] = l;
}

std::vector<Candidate> extend(const Candidate& c, std::size_t vid,
                              const DagVertex& v, const DeviceView& d) {
  const Qubit a = v.qubits[0];
  const Qubit b = v.qubits[1];
  const PhysicalQubit pa = c.placement[idx(a)];
  const PhysicalQubit pb = c.placement[idx(b)];
  const Topology& topo = d.topology;
  std::vector<Candidate> out;

  const auto finish = [&](Candidate next) {
    next.vertices.push_back(vid);
    next.score *= vertex_score(v, next.placement, d);
    out.push_back(std::move(next));
  };

  if (pa != kUnplaced && pb != kUnplaced) {
    if (topo.adjacent(pa, pb)) {
      finish(c);
    }
  } else if (pa != kUnplaced || pb != kUnplaced) {
    const Qubit fresh = pa == kUnplaced ? a : b;
    const PhysicalQubit anchor = pa == kUnplaced ? pb : pa;
    for (PhysicalQubit u : topo.neighbors(anchor)) {
      if (c.occupant[idx(u)] == kVacant) {
        Candidate next = c;
        seat(next, fresh, u);
        finish(std::move(next));
      }
    }
  } else {
    for (const auto& [x, y] : topo.edges()) {
      if (c.occupant[idx(x)] != kVacant || c.occupant[idx(y)] != kVacant) {
        continue;
      }
      for (const auto& [qa, qb] : {Edge{x, y}, Edge{y, x}}) {
        Candidate next = c;
        seat(next, a, qa);
        seat(next, b, qb);
        finish(std::move(next));
      }
    }
  }
  return out;
}

void prune(std::vector<Candidate>& cands, std::size_t beam) {
  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    if (x.score != y.score) {
      return x.score > y.score;
    }
    return x.placement < y.placement;
  });
  cands.erase(std::unique(cands.begin(), cands.end(),
                          [](const Candidate& x, const Candidate& y) {
                            return x.placement == y.placement;
                          }),
              cands.end());
  if (cands.size() > beam) {
    cands.resize(beam);
  }
}

EmbeddingLayer seal(std::vector<Candidate>& cands) {
  EmbeddingLayer layer;
  for (Candidate& c : cands) {
    layer.push_back({std::move(c.placement), std::move(c.vertices), c.score});
  }
  cands.clear();
  return layer;
}

// SWAP(p, q) decomposes with four U3s on q and two on p.
Edge swap_orientation(const DeviceView& d, PhysicalQubit a, PhysicalQubit b) {
  const Edge e = make_edge(a, b);
  if (d.single_gate[idx(e.first)] > d.single_gate[idx(e.second)]) {
    return {e.second, e.first};
  }
  return e;
}

std::vector<Qubit> readout_qubits(const Circuit& c) {
  if (has_measurements(c)) {
    return measured_qubits(c);
  }
  std::vector<Qubit> all(c.n_qubits);
  std::iota(all.begin(), all.end(), 0);
  return all;
}

struct PathState {
  std::vector<std::size_t> choice;
  Placement full;
  std::vector<SwapRoute> routes;
  double score = 1.0;
  std::size_t swaps = 0;
};

bool state_less(const PathState& x, const PathState& y) {
  if (x.score != y.score) {
    return x.score > y.score;
  }
  if (x.swaps != y.swaps) {
    return x.swaps < y.swaps;
  }
  return std::tie(x.full, x.choice) < std::tie(y.full, y.choice);
}

// Minimum-cost assignment of rows to distinct columns (rows <= cols), by the
// Hungarian method. Returns the column of each row.
std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t rows = cost.size();
  const std::size_t cols = rows == 0 ? 0 : cost[0].size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(rows + 1, 0.0);
  std::vector<double> v(cols + 1, 0.0);
  std::vector<std::size_t> row_of(cols + 1, 0);
  std::vector<std::size_t> way(cols + 1, 0);
  for (std::size_t i = 1; i <= rows; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(cols + 1, inf);
    std::vector<bool> used(cols + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = row_of[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j]) {
          continue;
        }
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> out(rows, 0);
  for (std::size_t j = 1; j <= cols; ++j) {
    if (row_of[j] != 0) {
      out[row_of[j] - 1] = j - 1;
    }
  }
  return out;
}

// Seats logicals that never meet a two-qubit gate on the vacancies that
// maximise the product of their gate and read-out fidelities.
Placement place_orphans(const GateDag& dag, const std::vector<Qubit>& readout,
                        Placement& full, const DeviceView& d, double& score) {
  const std::size_t n = d.topology.size();
  std::vector<std::size_t> gate_count(full.size(), 0);
  std::vector<bool> needs(full.size(), false);
  for (const Gate& g : dag.orphans) {
    ++gate_count[idx(g.qubits[0])];
    needs[idx(g.qubits[0])] = true;
  }
  std::vector<bool> measured(full.size(), false);
  for (Qubit q : readout) {
    measured[idx(q)] = true;
    needs[idx(q)] = true;
  }
  std::vector<bool> taken(n, false);
  for (PhysicalQubit p : full) {
    if (p != kUnplaced) {
      taken[idx(p)] = true;
    }
  }
  std::vector<std::size_t> orphans;
  for (std::size_t l = 0; l < full.size(); ++l) {
    if (needs[l] && full[l] == kUnplaced) {
      orphans.push_back(l);
    }
  }
  std::vector<std::size_t> vacancies;
  for (std::size_t s = 0; s < n; ++s) {
    if (!taken[s]) {
      vacancies.push_back(s);
    }
  }
  if (orphans.size() > vacancies.size()) {
    throw MappingError("not enough physical qubits for the circuit");
  }
  const auto value = [&](std::size_t l, std::size_t s) {
    double v = std::pow(d.single_gate[s], static_cast<double>(gate_count[l]));
    if (measured[l]) {
      v *= d.measure[s];
    }
    return v;
  };
  std::vector<std::vector<double>> cost(orphans.size(),
                                        std::vector<double>(vacancies.size(), 0.0));
  for (std::size_t i = 0; i < orphans.size(); ++i) {
    for (std::size_t j = 0; j < vacancies.size(); ++j) {
      cost[i][j] = -std::log(std::max(value(orphans[i], vacancies[j]), 1e-300));
    }
  }
  const std::vector<std::size_t> pick = min_cost_assignment(cost);
  Placement seats(full.size(), kUnplaced);
  for (std::size_t i = 0; i < orphans.size(); ++i) {
    const std::size_t l = orphans[i];
    const std::size_t s = vacancies[pick[i]];
    seats[l] = full[l] = static_cast<PhysicalQubit>(s);
    score *= value(l, s);
  }
  for (Qubit q : readout) {
    if (seats[idx(q)] == kUnplaced) {
      score *= d.measure[idx(full[idx(q)])];
    }
  }
  return seats;
}

std::vector<PhysicalQubit> footprint_of(const Circuit& c) {
  std::set<PhysicalQubit> used;
  for (const Gate& g : c.gates) {
    used.insert(g.qubits.begin(), g.qubits.end());
  }
  return {used.begin(), used.end()};
}

void append_swap(Circuit& out, const DeviceView& d, const Edge& e) {
  const auto [p, q] = swap_orientation(d, e.first, e.second);
  append_native(Gate{GateKind::SWAP, {p, q}, {}}, out);
}

void append_measures(Circuit& out, const std::vector<Qubit>& readout,
                     const Placement& final_placement) {
  for (Qubit q : readout) {
    out.add(Gate{GateKind::Measure, {final_placement[idx(q)]}, {}});
  }
}

struct Prepared {
  std::vector<Qubit> readout;
  GateDag dag;
};

Prepared prepare(const Circuit& c, std::size_t device_size) {
  require_valid(c);
  if (active_qubit_count(c) > device_size) {
    throw MappingError("circuit needs " + std::to_string(active_qubit_count(c)) +
                       " qubits but the device has " + std::to_string(device_size));
  }
  return {readout_qubits(c),
          build_interaction_dag(without_measurements(decompose_to_native(c)))};
}

MappedCircuit relabel(MappedCircuit m, const std::vector<PhysicalQubit>& members,
                      std::size_t chip_size) {
  const auto lift = [&](PhysicalQubit& q) {
    if (q != kUnplaced) {
      q = members[idx(q)];
    }
  };
  m.circuit.n_qubits = chip_size;
  for (Gate& g : m.circuit.gates) {
    for (Qubit& q : g.qubits) {
      lift(q);
    }
  }
  std::for_each(m.final_placement.begin(), m.final_placement.end(), lift);
  for (Embedding& e : m.path.embeddings) {
    std::for_each(e.placement.begin(), e.placement.end(), lift);
  }
  for (SwapRoute& r : m.path.routes) {
    for (Edge& e : r) {
      e = make_edge(members[idx(e.first)], members[idx(e.second)]);
    }
  }
  std::for_each(m.path.orphan_seats.begin(), m.path.orphan_seats.end(), lift);
  std::for_each(m.path.final_placement.begin(), m.path.final_placement.end(), lift);
  m.footprint = footprint_of(m.circuit);
  return m;
}

}  // namespace

std::size_t active_qubit_count(const Circuit& c) {
  std::vector<bool> used(c.n_qubits, false);
  for (const Gate& g : c.gates) {
    for (Qubit q : g.qubits) {
      used[idx(q)] = true;
    }
  }
  if (!has_measurements(c)) {
    return c.n_qubits;
  }
  return static_cast<std::size_t>(std::count(used.begin(), used.end(), true));
}

std::vector<EmbeddingLayer> embedding_sequences(const GateDag& dag,
                                                const DeviceView& device,
                                                std::size_t beam) {
  if (beam == 0) {
    throw std::invalid_argument("embedding_sequences: beam must be positive");
  }
  const std::size_t n = device.topology.size();
  std::vector<std::size_t> pending(dag.size());
  for (std::size_t v = 0; v < dag.size(); ++v) {
    pending[v] = dag.predecessors[v].size();
  }
  std::vector<bool> covered(dag.size(), false);
  std::size_t n_covered = 0;

  const auto cover = [&](std::size_t v) {
    covered[v] = true;
    ++n_covered;
    for (std::size_t s : dag.successors[v]) {
      --pending[s];
    }
  };
  const auto ready = [&] {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < dag.size(); ++v) {
      if (!covered[v] && pending[v] == 0) {
        out.push_back(v);
      }
    }
    return out;
  };

  std::vector<EmbeddingLayer> layers;
  std::vector<Candidate> live;
  while (n_covered < dag.size()) {
    const auto frontier = ready();
    if (live.empty()) {
      const Candidate empty{Placement(dag.n_qubits, kUnplaced),
                            std::vector<int>(n, kVacant), {}, 1.0};
      const std::size_t v = frontier.front();
      live = extend(empty, v, dag.vertices[v], device);
      prune(live, beam);
      cover(v);
      continue;
    }
    bool extended = false;
    for (std::size_t v : frontier) {
      std::vector<Candidate> next;
      for (const Candidate& c : live) {
        auto more = extend(c, v, dag.vertices[v], device);
        std::move(more.begin(), more.end(), std::back_inserter(next));
      }
      if (!next.empty()) {
        prune(next, beam);
        live = std::move(next);
        cover(v);
        extended = true;
        break;
      }
    }
    if (!extended) {
      layers.push_back(seal(live));
    }
  }
  if (!live.empty()) {
    layers.push_back(seal(live));
  }
  return layers;
}

double circuit_fidelity(const Circuit& physical, const DeviceView& device) {
  double f = 1.0;
  for (const Gate& g : physical.gates) {
    switch (g.kind) {
      case GateKind::U3:
        f *= device.single_gate.at(idx(g.qubits[0]));
        break;
      case GateKind::CZ:
        f *= device.edge_fidelity(g.qubits[0], g.qubits[1]);
        break;
      case GateKind::Measure:
        f *= device.measure.at(idx(g.qubits[0]));
        break;
      default:
        throw std::invalid_argument("circuit_fidelity: non-native gate " +
                                    std::string(gate_name(g.kind)));
    }
  }
  return f;
}

double swap_fidelity(const DeviceView& device, PhysicalQubit a, PhysicalQubit b) {
  const auto [p, q] = swap_orientation(device, a, b);
  const double e = device.edge_fidelity(p, q);
  const double fp = device.single_gate[idx(p)];
  const double fq = device.single_gate[idx(q)];
  return e * e * e * fp * fp * fq * fq * fq * fq;
}

Circuit emit_path(const MappingPath& path, const GateDag& dag,
                  const std::vector<Qubit>& readout, const DeviceView& device) {
  Circuit out;
  out.n_qubits = device.topology.size();
  Placement full(dag.n_qubits, kUnplaced);
  for (std::size_t k = 0; k < path.embeddings.size(); ++k) {
    const Embedding& emb = path.embeddings[k];
    if (k > 0) {
      for (const Edge& e : path.routes[k - 1]) {
        append_swap(out, device, e);
      }
      full = apply_route(std::move(full), path.routes[k - 1]);
    }
    for (std::size_t l = 0; l < full.size(); ++l) {
      if (emb.placement[l] != kUnplaced) {
        full[l] = emb.placement[l];
      }
    }
    for (std::size_t vid : emb.vertices) {
      const DagVertex& v = dag.vertices[vid];
      const auto put = [&](const Gate& g) {
        Gate h = g;
        for (Qubit& q : h.qubits) {
          q = full[idx(q)];
        }
        out.add(std::move(h));
      };
      std::for_each(v.before.begin(), v.before.end(), put);
      put(v.gate);
      std::for_each(v.after.begin(), v.after.end(), put);
    }
  }
  for (const Gate& g : dag.orphans) {
    out.add(Gate{g.kind, {path.orphan_seats[idx(g.qubits[0])]}, g.params});
  }
  append_measures(out, readout, path.final_placement);
  return out;
}

double path_fidelity(const MappingPath& path, const GateDag& dag,
                     const std::vector<Qubit>& readout, const DeviceView& device) {
  return circuit_fidelity(emit_path(path, dag, readout, device), device);
}

MappedCircuit map_circuit(const Circuit& c, const DeviceView& device,
                          std::size_t beam) {
  const Prepared prep = prepare(c, device.topology.size());
  const GateDag& dag = prep.dag;
  const auto layers = embedding_sequences(dag, device, beam);

  std::vector<PathState> states{PathState{{}, Placement(dag.n_qubits, kUnplaced), {}, 1.0, 0}};
  for (std::size_t k = 0; k < layers.size(); ++k) {
    std::vector<PathState> next;
    for (const PathState& s : states) {
      for (std::size_t a = 0; a < layers[k].size(); ++a) {
        const Embedding& alt = layers[k][a];
        PathState t = s;
        t.choice.push_back(a);
        if (k > 0) {
          SwapRoute route = token_swap_route(s.full, alt.placement, device.topology);
          for (const Edge& e : route) {
            t.score *= swap_fidelity(device, e.first, e.second);
          }
          t.swaps += route.size();
          t.full = apply_route(std::move(t.full), route);
          t.routes.push_back(std::move(route));
        }
        for (std::size_t l = 0; l < t.full.size(); ++l) {
          if (alt.placement[l] != kUnplaced) {
            t.full[l] = alt.placement[l];
          }
        }
        t.score *= alt.score;
        next.push_back(std::move(t));
      }
    }
    std::sort(next.begin(), next.end(), state_less);
    if (next.size() > beam) {
      next.resize(beam);
    }
    states = std::move(next);
  }

  std::optional<MappingPath> best;
  for (PathState& s : states) {
    MappingPath p;
    for (std::size_t k = 0; k < layers.size(); ++k) {
      p.embeddings.push_back(layers[k][s.choice[k]]);
    }
    p.routes = std::move(s.routes);
    p.fidelity_score = s.score;
    p.orphan_seats = place_orphans(dag, prep.readout, s.full, device, p.fidelity_score);
    p.final_placement = std::move(s.full);
    p.swap_count = s.swaps;
    const bool better =
        !best || p.fidelity_score > best->fidelity_score ||
        (p.fidelity_score == best->fidelity_score &&
         (p.swap_count < best->swap_count ||
          (p.swap_count == best->swap_count &&
           p.final_placement < best->final_placement)));
    if (better) {
      best = std::move(p);
    }
  }

  MappedCircuit m;
  m.circuit = emit_path(*best, dag, prep.readout, device);
  m.final_placement = best->final_placement;
  m.fidelity_score = circuit_fidelity(m.circuit, device);
  m.swap_count = best->swap_count;
  m.path = std::move(*best);
  m.footprint = footprint_of(m.circuit);
  return m;
}

MappedCircuit map_circuit(const Circuit& c, const QpuModel& qpu, std::size_t beam) {
  auto m = try_map_circuit(c, qpu, beam);
  if (!m) {
    throw MappingError("no free executable region of " + qpu.id +
                       " can host a " + std::to_string(active_qubit_count(c)) +
                       "-qubit circuit");
  }
  return std::move(*m);
}

std::optional<MappedCircuit> try_map_circuit(const Circuit& c, const QpuModel& qpu,
                                             std::size_t beam) {
  require_valid(c);
  const std::size_t need = std::max<std::size_t>(active_qubit_count(c), 1);
  std::optional<MappedCircuit> best;
  for (const auto& members : induced_components(qpu.topology, free_executable_mask(qpu))) {
    if (members.size() < std::max<std::size_t>(need, 2)) {
      continue;
    }
    MappedCircuit m =
        relabel(map_circuit(c, device_view(qpu, members), beam), members, qpu.size());
    if (!best || m.fidelity_score > best->fidelity_score ||
        (m.fidelity_score == best->fidelity_score && m.swap_count < best->swap_count)) {
      best = std::move(m);
    }
  }
  return best;
}

MappedCircuit map_naive(const Circuit& c, const DeviceView& device) {
  require_valid(c);
  const std::size_t n = device.topology.size();
  if (c.n_qubits > n) {
    throw MappingError("circuit needs " + std::to_string(c.n_qubits) +
                       " qubits but the device has " + std::to_string(n));
  }
  const auto readout = readout_qubits(c);
  const Circuit native = without_measurements(decompose_to_native(c));

  Placement seat(c.n_qubits);
  std::iota(seat.begin(), seat.end(), 0);
  std::vector<int> occupant(n, kVacant);
  for (std::size_t l = 0; l < c.n_qubits; ++l) {
    occupant[l] = static_cast<int>(l);
  }

  MappedCircuit m;
  m.circuit.n_qubits = n;
  for (const Gate& g : native.gates) {
    if (g.qubits.size() == 2) {
      const PhysicalQubit target = seat[idx(g.qubits[1])];
      PhysicalQubit& here = seat[idx(g.qubits[0])];
      while (!device.topology.adjacent(here, target)) {
        PhysicalQubit hop = kUnplaced;
        for (PhysicalQubit u : device.topology.neighbors(here)) {
          if (device.topology.distance(u, target) < device.topology.distance(here, target)) {
            hop = u;
            break;
          }
        }
        const Edge e = make_edge(here, hop);
        append_native(Gate{GateKind::SWAP, {e.first, e.second}, {}}, m.circuit);
        const int other = occupant[idx(hop)];
        if (other != kVacant) {
          seat[idx(other)] = here;
        }
        occupant[idx(here)] = other;
        occupant[idx(hop)] = g.qubits[0];
        here = hop;
        ++m.swap_count;
      }
    }
    Gate h = g;
    for (Qubit& q : h.qubits) {
      q = seat[idx(q)];
    }
    m.circuit.add(std::move(h));
  }
  append_measures(m.circuit, readout, seat);
  m.final_placement = seat;
  m.fidelity_score = circuit_fidelity(m.circuit, device);
  m.path.final_placement = seat;
  m.path.fidelity_score = m.fidelity_score;
  m.path.swap_count = m.swap_count;
  m.footprint = footprint_of(m.circuit);
  return m;
}

std::string dump_mapping_path(const MappingPath& path) {
  const auto placement = [](const Placement& p) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t l = 0; l < p.size(); ++l) {
      if (p[l] == kUnplaced) {
        continue;
      }
      os << (first ? "" : " ") << l << "->" << p[l];
      first = false;
    }
    return os.str();
  };
  const auto number = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };

  std::ostringstream os;
  os << "mapping_path\n";
  for (std::size_t k = 0; k < path.embeddings.size(); ++k) {
    const Embedding& e = path.embeddings[k];
    if (k > 0) {
      os << "route " << k - 1 << " swaps=" << path.routes[k - 1].size() << ":";
      for (const auto& [a, b] : path.routes[k - 1]) {
        os << " (" << a << "," << b << ")";
      }
      os << "\n";
    }
    os << "embedding " << k << " score=" << number(e.score) << "\n  vertices:";
    for (std::size_t v : e.vertices) {
      os << " " << v;
    }
    os << "\n  placement: " << placement(e.placement) << "\n";
  }
  os << "orphans: " << placement(path.orphan_seats) << "\n";
  os << "final_placement: " << placement(path.final_placement) << "\n";
  os << "fidelity_score: " << number(path.fidelity_score) << "\n";
  os << "swap_count: " << path.swap_count << "\n";
  return os.str();
}

}  // namespace qpilot
