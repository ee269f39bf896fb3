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

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pielab/linalg.hpp"

namespace pielab {

enum class GateKind { H, X, Y, RX, RY, RZ, RXX, RZZ, CNOT };

std::string_view gate_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);
int gate_arity(GateKind kind);
bool gate_has_angle(GateKind kind);

/// One gate of the native set. Rotations are R_P(theta) = exp(-i theta/2 P);
/// RXX/RZZ use P = X(x)X / Z(x)Z. For CNOT targets[0] is the control.
struct Gate {
    GateKind kind = GateKind::H;
    std::array<int, 2> targets{0, -1};
    double angle = 0.0;

    static Gate one(GateKind kind, int q, double angle = 0.0);
    static Gate two(GateKind kind, int q0, int q1, double angle = 0.0);

    int arity() const { return gate_arity(kind); }
    std::span<const int> qubits() const { return {targets.data(), static_cast<std::size_t>(arity())}; }

    /// Local unitary; for two-qubit gates local bit 0 is targets[0].
    ComplexMatrix matrix() const;
    Gate adjoint() const;

    bool operator==(const Gate &) const = default;
};

/// Ordered gate list on a fixed register. fold_count n records that the gate
/// list is base (adjoint(base) base)^n, i.e. noise scale lambda = 2n + 1.
class Circuit {
  public:
    explicit Circuit(int qubits);

    int qubits() const { return qubits_; }
    const std::vector<Gate> &gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    int fold_count() const { return fold_count_; }
    int noise_scale() const { return 2 * fold_count_ + 1; }
    /// Gate count of the unfolded circuit.
    std::size_t base_size() const { return gates_.size() / static_cast<std::size_t>(noise_scale()); }

    Circuit &add(const Gate &gate);

    /// Full 2^n x 2^n unitary by dense multiplication; intended for small n.
    ComplexMatrix unitary() const;

    bool operator==(const Circuit &) const = default;

  private:
    friend Circuit fold(const Circuit &c, int n);
    friend Circuit adjoint(const Circuit &c);

    int qubits_;
    std::vector<Gate> gates_;
    int fold_count_ = 0;
};

/// Reversed gate order with each gate inverted. fold_count is kept.
Circuit adjoint(const Circuit &c);

/// base (adjoint(base) base)^n with fold_count = n. The input gate list is
/// taken as the base, whatever its own fold count.
Circuit fold(const Circuit &c, int n);

/// First-order Trotterization of H = -sum_i X_i X_{i+1} - X_{N-1} X_0 - Gamma sum_i Z_i
/// over `steps` steps of length t/steps. Each step applies the nearest
/// neighbour RXX bonds, the periodic bond, then RZ on every qubit.
Circuit build_ising_trotter(int qubits, double field, double time, int steps);

/// Number of angles build_su2_ansatz expects: 2 * qubits * (layers + 1).
std::size_t su2_angle_count(int qubits, int layers);

/// Hardware-efficient ansatz: layers + 1 rotation blocks (RY on every qubit,
/// then RZ on every qubit) separated by CNOT(i, i+1) ladders. Angles are
/// consumed block by block, RY angles before RZ angles, qubit 0 first.
Circuit build_su2_ansatz(int qubits, int layers, std::span<const double> angles);

}  // namespace pielab
