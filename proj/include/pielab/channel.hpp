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

#include <variant>
#include <vector>

#include "pielab/linalg.hpp"

namespace pielab {

/// A linear map on n-qubit operators, held in whichever representation it was
/// built from. Conversions are computed on demand.
///
/// Conventions:
///  * Choi matrix J = sum_ab |a><b| (x) L(|a><b|), input factor first, built
///    from the unnormalized maximally entangled state (Tr J = 2^n for
///    trace-preserving maps).
///  * PTM R_ij = Tr[P_i L(P_j)] / 2^n over pauli_basis(n).
///
/// Channels need not be completely positive (inverse noise maps are not);
/// use is_cptp() where that matters.
class Channel {
  public:
    struct Unitary {
        ComplexMatrix u;
    };
    struct Kraus {
        std::vector<ComplexMatrix> ops;
    };
    struct Ptm {
        RealMatrix r;
    };
    struct Choi {
        ComplexMatrix j;
    };
    using Representation = std::variant<Unitary, Kraus, Ptm, Choi>;

    static Channel identity(int qubits);
    static Channel unitary(ComplexMatrix u);
    static Channel kraus(std::vector<ComplexMatrix> ops);
    static Channel ptm(RealMatrix r);
    static Channel choi(ComplexMatrix j);

    int qubits() const { return qubits_; }
    std::int64_t dim() const { return std::int64_t{1} << qubits_; }
    const Representation &representation() const { return rep_; }
    bool is_unitary() const { return std::holds_alternative<Unitary>(rep_); }

    /// Completely positive and trace preserving within `tol`.
    bool is_cptp(double tol = 1e-10) const;

  private:
    Channel(int qubits, Representation rep) : qubits_(qubits), rep_(std::move(rep)) {}

    int qubits_ = 0;
    Representation rep_;
};

ComplexMatrix choi_of(const Channel &ch);
RealMatrix ptm_of(const Channel &ch);

/// Kraus operators; Choi and PTM inputs are decomposed through the Choi
/// eigenbasis and must be completely positive (Errc::InvalidChannel otherwise).
std::vector<ComplexMatrix> kraus_of(const Channel &ch);

/// a after b. Kraus/unitary pairs stay in Kraus form, anything else composes
/// through the PTM.
Channel compose(const Channel &a, const Channel &b);

/// L(m) for an arbitrary (not necessarily Hermitian) operator m.
ComplexMatrix apply_channel(const Channel &ch, const ComplexMatrix &m);

/// Tr over the output factor of a Choi matrix (dim 4^n -> 2^n).
ComplexMatrix partial_trace_output(const ComplexMatrix &choi, int qubits);

/// Superoperator S acting on column-major vec(m): vec(L(m)) = S vec(m).
ComplexMatrix superoperator_of(const std::vector<ComplexMatrix> &kraus);

}  // namespace pielab
