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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pielab/linalg.hpp"
#include "pielab/noise.hpp"
#include "pielab/pauli.hpp"

namespace pielab {

inline constexpr int kMaxQubits = 12;

class DensityState {
  public:
    /// |0...0><0...0|.
    static DensityState zero(int qubits);
    /// Validates Hermiticity, unit trace and positivity.
    static DensityState from_matrix(ComplexMatrix rho, double tol = 1e-10);

    int qubits() const { return qubits_; }
    const ComplexMatrix &matrix() const { return rho_; }

  private:
    friend DensityState evolve(const NoisyCircuit &, const DensityState &);
    friend void evolve_checkpoints(const NoisyCircuit &, const DensityState &, std::span<const std::size_t>,
                                   const std::function<void(std::size_t, const DensityState &)> &);
    DensityState(int qubits, ComplexMatrix rho) : qubits_(qubits), rho_(std::move(rho)) {}

    int qubits_ = 0;
    ComplexMatrix rho_;
};

class Observable {
  public:
    Observable(int qubits, std::vector<PauliString> terms, double offset = 0.0);

    /// (1/N) sum_i Z_i.
    static Observable magnetization(int qubits);

    int qubits() const { return qubits_; }
    const std::vector<PauliString> &terms() const { return terms_; }
    double offset() const { return offset_; }
    /// Tr[O]/2^N: the offset plus coefficients of identity terms.
    double identity_component() const;
    /// Observable with identity terms and offset removed.
    Observable traceless_part() const;
    ComplexMatrix matrix() const;

  private:
    int qubits_;
    std::vector<PauliString> terms_;
    double offset_;
};

struct ShotResult {
    double mean = 0.0;
    double std_error = 0.0;
    long shots = 1;
};

/// Local superoperator of one noisy op (gate, then noise, then frame Pauli).
ComplexMatrix op_superoperator(const NoisyOp &op);

DensityState evolve(const NoisyCircuit &circuit, const DensityState &initial);

/// Applies the circuit to an arbitrary 2^n x 2^n operator (linear extension).
ComplexMatrix evolve_operator(const NoisyCircuit &circuit, ComplexMatrix m);

/// Evolves once and calls `visit(i, state)` after the first cuts[i] ops.
/// `cuts` must be nondecreasing and at most the op count.
void evolve_checkpoints(const NoisyCircuit &circuit, const DensityState &initial, std::span<const std::size_t> cuts,
                        const std::function<void(std::size_t, const DensityState &)> &visit);

double expectation(const DensityState &state, const Observable &obs);

/// A qubit-wise commuting group of terms sharing one measurement basis.
struct MeasurementSetting {
    std::string basis;  // one letter per qubit, leftmost = highest qubit; I means unmeasured
    std::vector<std::size_t> terms;
};

/// Greedy grouping of the non-identity terms in input order.
std::vector<MeasurementSetting> measurement_settings(const Observable &obs);

/// Outcome probabilities over 2^n bitstrings after rotating into `basis`.
std::vector<double> outcome_distribution(const DensityState &state, const std::string &basis);

/// Exact mean with the standard error a `shots`-per-setting experiment would have.
ShotResult shot_statistics(const DensityState &state, const Observable &obs, long shots);

/// Draws `shots` bitstrings per setting; deterministic for a given seed.
ShotResult sample_expectation(const DensityState &state, const Observable &obs, long shots, std::uint64_t seed);

ShotResult sample_expectation(const NoisyCircuit &circuit, const Observable &obs, long shots, std::uint64_t seed);

}  // namespace pielab
