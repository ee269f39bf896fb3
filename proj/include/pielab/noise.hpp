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

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pielab/channel.hpp"
#include "pielab/circuit.hpp"
#include "pielab/pauli.hpp"

namespace pielab {

/// rho -> (1 - omega) rho + omega Tr[rho] I / 2^n
struct Depolarizing {
    double omega = 0.0;
};
/// rho -> (1 - p) rho + p Z rho Z on every wire.
struct Dephasing {
    double p = 0.0;
};
/// rho -> (1 - px - py - pz) rho + px X rho X + py Y rho Y + pz Z rho Z on every wire.
struct MixedPauli {
    double px = 0.0;
    double py = 0.0;
    double pz = 0.0;
};
/// Pauli channel generated by Lindblad dissipators r_P (P rho P - rho) over
/// unit time on every wire. PTM entry for Q is exp(-2 sum_{P anticommuting Q} r_P).
struct PauliLindblad {
    double rx = 0.0;
    double ry = 0.0;
    double rz = 0.0;
};

enum class NoiseScope { OneQubit, TwoQubit, Both };

struct NoiseSpec {
    std::variant<Depolarizing, Dephasing, MixedPauli, PauliLindblad> kind;
    NoiseScope scope = NoiseScope::Both;
};

/// Throws Errc::InvalidProbability on out-of-range parameters.
void validate(const NoiseSpec &spec);

std::string describe(const NoiseSpec &spec);

/// Kraus channel for `spec` acting on a `qubits`-wide gate (1 or 2).
/// Depolarizing acts jointly on both wires of a two-qubit gate; the Pauli
/// families act independently on each wire.
Channel channel_for(const NoiseSpec &spec, int qubits);

/// Single-qubit Pauli error probabilities {p_I, p_X, p_Y, p_Z} of a
/// Pauli-diagonal spec. Depolarizing is reported for one qubit.
std::array<double, 4> pauli_probabilities(const NoiseSpec &spec);

struct NoiseModel {
    std::optional<NoiseSpec> one_qubit;
    std::optional<NoiseSpec> two_qubit;

    /// Places `spec` on the gate classes named by its scope.
    static NoiseModel from_spec(const NoiseSpec &spec);
    static NoiseModel noiseless() { return {}; }

    bool is_noiseless() const { return !one_qubit && !two_qubit; }
    const std::optional<NoiseSpec> &for_arity(int arity) const { return arity == 1 ? one_qubit : two_qubit; }
};

/// One executed step: the ideal gate, the noise channel that follows it (if
/// any), and an optional Pauli frame inserted after the noise by the sampling
/// estimators. Frame letters are local (rightmost letter = gate.targets[0]).
struct NoisyOp {
    Gate gate;
    std::shared_ptr<const Channel> noise;
    std::optional<PauliString> frame;
};

struct NoisyCircuit {
    int qubits = 0;
    std::vector<NoisyOp> ops;
    int fold_count = 0;

    std::size_t noise_events() const;
};

/// Every gate is followed by the model's channel for its arity; folded gates
/// are treated like any other.
NoisyCircuit apply_noise_model(const Circuit &c, const NoiseModel &nm);

}  // namespace pielab
