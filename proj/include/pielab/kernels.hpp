// Copyright 2026 The pie-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>

#include "pielab/linalg.hpp"

namespace pielab {
struct NoisyCircuit;
}

namespace pielab::kernels {

/// Applies a local superoperator in place to a column-major 2^n x 2^n
/// operator. `superop` acts on column-major vec of the local block, whose bit
/// k corresponds to targets[k]. Blocks are independent, so the sweep is an
/// OpenMP parallel loop; every element is written by exactly one iteration and
/// results do not depend on the thread count.
void apply_superop(ComplexMatrix &rho, std::span<const int> targets, const ComplexMatrix &superop);

/// Same contract, single-threaded. Kept for benchmarking the parallel sweep.
void apply_superop_serial(ComplexMatrix &rho, std::span<const int> targets, const ComplexMatrix &superop);

/// Dense 2^n x 2^n embedding of a local operator acting on `targets`.
ComplexMatrix embed(const ComplexMatrix &local, std::span<const int> targets, int qubits);

}  // namespace pielab::kernels

namespace pielab::reference {

/// Straightforward dense evolution: every gate, noise Kraus operator and frame
/// Pauli is embedded as a full matrix and applied as K rho K^dagger. O(8^n)
/// per step; the test oracle for the block kernels.
ComplexMatrix evolve(const NoisyCircuit &circuit, const ComplexMatrix &rho);

}  // namespace pielab::reference
