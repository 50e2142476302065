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

namespace qpilot {

/// True for the native set {U3, CZ, Measure}.
bool is_native(GateKind kind);
bool is_native(const Circuit& c);

/// Rewrites every gate into U3 / CZ / Measure. The result equals the input
/// up to a global phase.
///
///   single-qubit  -> one U3
///   CNOT(c,t)     -> H(t) CZ(c,t) H(t)
///   SWAP(a,b)     -> CNOT(a,b) CNOT(b,a) CNOT(a,b), 9 native gates
///   CR(theta)     -> phase / CNOT ladder
///   CU            -> ABC construction with two CNOTs
///   ISWAP(theta)  -> exp(i theta/4 (XX + YY)) as two ZZ rotations
///   Toffoli       -> the 6-CNOT network
Circuit decompose_to_native(const Circuit& c);

/// Appends the native form of a single gate to `out`.
void append_native(const Gate& g, Circuit& out);

}  // namespace qpilot
