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

#include "qpilot/dag.hpp"

#include <algorithm>
#include <stdexcept>

namespace qpilot {
namespace {

using Pending = std::vector<std::pair<std::size_t, Gate>>;

// Drains the pending gates of several qubits into `out`, in program order.
void drain(std::vector<Pending*> sources, std::vector<Gate>& out) {
  Pending merged;
  for (Pending* p : sources) {
    merged.insert(merged.end(), p->begin(), p->end());
    p->clear();
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& entry : merged) {
    out.push_back(std::move(entry.second));
  }
}

}  // namespace

GateDag build_interaction_dag(const Circuit& c) {
  require_valid(c);
  GateDag dag;
  dag.n_qubits = c.n_qubits;
  std::vector<long> last(c.n_qubits, -1);
  std::vector<Pending> pending(c.n_qubits);

  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    if (g.qubits.size() == 1) {
      pending[static_cast<std::size_t>(g.qubits[0])].emplace_back(i, g);
      continue;
    }
    if (g.qubits.size() != 2) {
      throw std::invalid_argument(
          "build_interaction_dag: gate " + std::to_string(i) + " (" +
          std::string(gate_name(g.kind)) +
          ") acts on more than two qubits; decompose the circuit first");
    }
    const std::size_t v = dag.vertices.size();
    DagVertex vertex;
    vertex.gate_index = i;
    vertex.gate = g;
    vertex.qubits = {g.qubits[0], g.qubits[1]};
    dag.successors.emplace_back();
    dag.predecessors.emplace_back();
    for (Qubit q : g.qubits) {
      const long prev = last[static_cast<std::size_t>(q)];
      if (prev >= 0) {
        auto& preds = dag.predecessors[v];
        const auto u = static_cast<std::size_t>(prev);
        if (std::find(preds.begin(), preds.end(), u) == preds.end()) {
          preds.push_back(u);
          dag.successors[u].push_back(v);
          dag.edges.emplace_back(u, v);
        }
      }
      last[static_cast<std::size_t>(q)] = static_cast<long>(v);
    }
    drain({&pending[static_cast<std::size_t>(g.qubits[0])],
           &pending[static_cast<std::size_t>(g.qubits[1])]},
          vertex.before);
    dag.vertices.push_back(std::move(vertex));
  }

  // Trailing single-qubit gates ride on the last vertex of their qubit.
  std::vector<std::vector<Pending*>> trailing(dag.vertices.size());
  std::vector<Pending*> orphan_sources;
  for (std::size_t q = 0; q < c.n_qubits; ++q) {
    if (pending[q].empty()) {
      continue;
    }
    if (last[q] >= 0) {
      trailing[static_cast<std::size_t>(last[q])].push_back(&pending[q]);
    } else {
      orphan_sources.push_back(&pending[q]);
    }
  }
  for (std::size_t v = 0; v < dag.vertices.size(); ++v) {
    if (!trailing[v].empty()) {
      drain(trailing[v], dag.vertices[v].after);
    }
  }
  drain(orphan_sources, dag.orphans);
  return dag;
}

bool is_acyclic(const GateDag& dag) {
  std::vector<std::size_t> indegree(dag.size(), 0);
  for (const auto& [u, v] : dag.edges) {
    ++indegree[v];
  }
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < dag.size(); ++v) {
    if (indegree[v] == 0) {
      ready.push_back(v);
    }
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::size_t u = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t v : dag.successors[u]) {
      if (--indegree[v] == 0) {
        ready.push_back(v);
      }
    }
  }
  return seen == dag.size();
}

Circuit expand_dag(const GateDag& dag, std::span<const std::size_t> order) {
  if (order.size() != dag.size()) {
    throw std::invalid_argument("expand_dag: order does not cover the DAG");
  }
  std::vector<bool> done(dag.size(), false);
  Circuit out(dag.n_qubits);
  for (std::size_t v : order) {
    if (v >= dag.size() || done[v]) {
      throw std::invalid_argument("expand_dag: order is not a permutation");
    }
    for (std::size_t u : dag.predecessors[v]) {
      if (!done[u]) {
        throw std::invalid_argument("expand_dag: order is not topological");
      }
    }
    done[v] = true;
    const DagVertex& vertex = dag.vertices[v];
    out.gates.insert(out.gates.end(), vertex.before.begin(), vertex.before.end());
    out.gates.push_back(vertex.gate);
    out.gates.insert(out.gates.end(), vertex.after.begin(), vertex.after.end());
  }
  out.gates.insert(out.gates.end(), dag.orphans.begin(), dag.orphans.end());
  return out;
}

}  // namespace qpilot
