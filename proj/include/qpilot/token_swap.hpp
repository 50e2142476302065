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

#include "qpilot/topology.hpp"

#include <vector>

namespace qpilot {

inline constexpr PhysicalQubit kUnplaced = -1;

/// Logical qubit -> physical qubit, kUnplaced where a logical has no seat.
using Placement = std::vector<PhysicalQubit>;

/// Ordered physical swaps; every entry is a coupling edge.
using SwapRoute = std::vector<Edge>;

/// Routes tokens between two vertex labellings.
///
/// `destination[v]` is the vertex the token currently on v must reach, or
/// kUnplaced for a wildcard token that may end anywhere. Concrete
/// destinations must be distinct.
///
/// Greedy approximation: rotate tokens along cycles of the "wants to move
/// closer" digraph (2-cycles first, which help two tokens per swap), move a
/// token onto an adjacent wildcard, and otherwise perform one unhappy swap
/// that pushes a settled token aside for a neighbour on its shortest path.
SwapRoute route_tokens(std::vector<PhysicalQubit> destination,
                       const Topology& topo);

/// Swaps that carry every logical placed in both `from` and `to` to its
/// `to` seat.
///
/// Logicals placed only in `from` become wildcards. Logicals placed only in
/// `to` need an empty seat: each is paired with the nearest unoccupied vertex
/// of `from`, whose (empty) token is routed to the requested seat. Throws
/// std::invalid_argument when the placements differ in length, leave the
/// topology, or are not injective.
SwapRoute token_swap_route(const Placement& from, const Placement& to,
                           const Topology& topo);

/// Moves the logicals of `p` through the swaps; unplaced entries stay unplaced.
Placement apply_route(Placement p, const SwapRoute& route);

bool route_is_valid(const SwapRoute& route, const Topology& topo);

}  // namespace qpilot
