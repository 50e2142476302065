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

#include "qpilot/token_swap.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace qpilot {
namespace {

class Router {
 public:
  Router(std::vector<PhysicalQubit> destination, const Topology& topo)
      : dest_(std::move(destination)), topo_(topo), n_(topo.size()) {}

  SwapRoute run() {
    // Each productive step lowers the total distance; unhappy swaps are
    // bounded by the distance sum as well, so this cap is never reached by
    // a correct run.
    std::size_t budget = 16 * n_ * n_ + 4 * total_distance() + 16;
    while (!done()) {
      if (budget-- == 0) {
        throw std::logic_error("token swapping did not converge");
      }
      if (happy_swap() || cycle_rotation() || wildcard_swap()) {
        continue;
      }
      unhappy_swap();
    }
    return std::move(route_);
  }

 private:
  bool unhappy(std::size_t v) const {
    return dest_[v] != kUnplaced && static_cast<std::size_t>(dest_[v]) != v;
  }

  bool wants(std::size_t v, PhysicalQubit u) const {
    if (!unhappy(v)) {
      return false;
    }
    return topo_.distance(u, dest_[v]) <
           topo_.distance(static_cast<PhysicalQubit>(v), dest_[v]);
  }

  std::size_t total_distance() const {
    std::size_t sum = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      if (dest_[v] != kUnplaced) {
        sum += static_cast<std::size_t>(
            topo_.distance(static_cast<PhysicalQubit>(v), dest_[v]));
      }
    }
    return sum;
  }

  bool done() const {
    for (std::size_t v = 0; v < n_; ++v) {
      if (unhappy(v)) {
        return false;
      }
    }
    return true;
  }

  void swap(PhysicalQubit a, PhysicalQubit b) {
    std::swap(dest_[static_cast<std::size_t>(a)], dest_[static_cast<std::size_t>(b)]);
    route_.push_back(make_edge(a, b));
  }

  // Both tokens move one step closer.
  bool happy_swap() {
    for (const auto& [a, b] : topo_.edges()) {
      if (wants(static_cast<std::size_t>(a), b) &&
          wants(static_cast<std::size_t>(b), a)) {
        swap(a, b);
        return true;
      }
    }
    return false;
  }

  std::optional<std::vector<PhysicalQubit>> find_cycle() const {
    enum Color : char { White, Gray, Black };
    std::vector<Color> color(n_, White);
    std::vector<PhysicalQubit> stack;
    std::optional<std::vector<PhysicalQubit>> found;

    const auto dfs = [&](auto&& self, PhysicalQubit v) -> bool {
      color[static_cast<std::size_t>(v)] = Gray;
      stack.push_back(v);
      for (PhysicalQubit u : topo_.neighbors(v)) {
        if (!wants(static_cast<std::size_t>(v), u)) {
          continue;
        }
        const Color cu = color[static_cast<std::size_t>(u)];
        if (cu == Gray) {
          const auto it = std::find(stack.begin(), stack.end(), u);
          found.emplace(it, stack.end());
          return true;
        }
        if (cu == White && self(self, u)) {
          return true;
        }
      }
      stack.pop_back();
      color[static_cast<std::size_t>(v)] = Black;
      return false;
    };

    for (std::size_t v = 0; v < n_; ++v) {
      if (unhappy(v) && color[v] == White &&
          dfs(dfs, static_cast<PhysicalQubit>(v))) {
        return found;
      }
    }
    return std::nullopt;
  }

  // Every token on the cycle advances one vertex.
  bool cycle_rotation() {
    const auto cycle = find_cycle();
    if (!cycle) {
      return false;
    }
    const auto& c = *cycle;
    for (std::size_t i = c.size() - 1; i > 0; --i) {
      swap(c[i - 1], c[i]);
    }
    return true;
  }

  bool wildcard_swap() {
    for (std::size_t v = 0; v < n_; ++v) {
      if (!unhappy(v)) {
        continue;
      }
      for (PhysicalQubit u : topo_.neighbors(static_cast<PhysicalQubit>(v))) {
        if (dest_[static_cast<std::size_t>(u)] == kUnplaced && wants(v, u)) {
          swap(static_cast<PhysicalQubit>(v), u);
          return true;
        }
      }
    }
    return false;
  }

  // With no cycles and no wildcard to step onto, walking the digraph from an
  // unhappy token ends at a settled token; that token steps aside.
  void unhappy_swap() {
    std::size_t v = 0;
    while (!unhappy(v)) {
      ++v;
    }
    PhysicalQubit prev = static_cast<PhysicalQubit>(v);
    while (true) {
      PhysicalQubit next = kUnplaced;
      for (PhysicalQubit u : topo_.neighbors(prev)) {
        if (wants(static_cast<std::size_t>(prev), u)) {
          next = u;
          break;
        }
      }
      if (!unhappy(static_cast<std::size_t>(next))) {
        swap(prev, next);
        return;
      }
      prev = next;
    }
  }

  std::vector<PhysicalQubit> dest_;
  const Topology& topo_;
  std::size_t n_;
  SwapRoute route_;
};

void check_placement(const Placement& p, const Topology& topo, const char* which) {
  std::vector<bool> used(topo.size(), false);
  for (PhysicalQubit v : p) {
    if (v == kUnplaced) {
      continue;
    }
    if (v < 0 || static_cast<std::size_t>(v) >= topo.size()) {
      throw std::invalid_argument(std::string("token_swap_route: '") + which +
                                  "' seats a logical on vertex " +
                                  std::to_string(v) + " outside the topology");
    }
    if (used[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument(std::string("token_swap_route: '") + which +
                                  "' is not injective");
    }
    used[static_cast<std::size_t>(v)] = true;
  }
}

}  // namespace

SwapRoute route_tokens(std::vector<PhysicalQubit> destination,
                       const Topology& topo) {
  if (destination.size() != topo.size()) {
    throw std::invalid_argument("route_tokens: destination size mismatch");
  }
  std::vector<bool> taken(topo.size(), false);
  for (PhysicalQubit d : destination) {
    if (d == kUnplaced) {
      continue;
    }
    if (d < 0 || static_cast<std::size_t>(d) >= topo.size() ||
        taken[static_cast<std::size_t>(d)]) {
      throw std::invalid_argument("route_tokens: invalid destination");
    }
    taken[static_cast<std::size_t>(d)] = true;
  }
  return Router(std::move(destination), topo).run();
}

SwapRoute token_swap_route(const Placement& from, const Placement& to,
                           const Topology& topo) {
  if (from.size() != to.size()) {
    throw std::invalid_argument("token_swap_route: placements differ in length");
  }
  check_placement(from, topo, "from");
  check_placement(to, topo, "to");

  const std::size_t n = topo.size();
  std::vector<PhysicalQubit> destination(n, kUnplaced);
  std::vector<bool> occupied(n, false);
  for (PhysicalQubit v : from) {
    if (v != kUnplaced) {
      occupied[static_cast<std::size_t>(v)] = true;
    }
  }
  for (std::size_t l = 0; l < from.size(); ++l) {
    if (from[l] != kUnplaced && to[l] != kUnplaced) {
      destination[static_cast<std::size_t>(from[l])] = to[l];
    }
  }
  // Fresh logicals: claim the nearest empty vertex for each requested seat.
  std::vector<bool> claimed(n, false);
  for (std::size_t l = 0; l < to.size(); ++l) {
    if (from[l] != kUnplaced || to[l] == kUnplaced) {
      continue;
    }
    PhysicalQubit best = kUnplaced;
    int best_dist = std::numeric_limits<int>::max();
    for (std::size_t v = 0; v < n; ++v) {
      if (occupied[v] || claimed[v]) {
        continue;
      }
      const int d = topo.distance(static_cast<PhysicalQubit>(v), to[l]);
      if (d < best_dist) {
        best_dist = d;
        best = static_cast<PhysicalQubit>(v);
      }
    }
    if (best == kUnplaced) {
      throw std::invalid_argument(
          "token_swap_route: more logical qubits than physical qubits");
    }
    claimed[static_cast<std::size_t>(best)] = true;
    destination[static_cast<std::size_t>(best)] = to[l];
  }
  return route_tokens(std::move(destination), topo);
}

Placement apply_route(Placement p, const SwapRoute& route) {
  for (const auto& [a, b] : route) {
    for (PhysicalQubit& v : p) {
      if (v == a) {
        v = b;
      } else if (v == b) {
        v = a;
      }
    }
  }
  return p;
}

bool route_is_valid(const SwapRoute& route, const Topology& topo) {
  return std::all_of(route.begin(), route.end(), [&](const Edge& e) {
    return topo.adjacent(e.first, e.second);
  });
}

}  // namespace qpilot
