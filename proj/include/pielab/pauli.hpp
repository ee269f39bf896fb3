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
#include <string>
#include <string_view>
#include <vector>

#include "pielab/linalg.hpp"

namespace pielab {

/// Pauli string over {I, X, Y, Z} with a real coefficient.
///
/// Letters are written most-significant qubit first: in "XIZ" the X acts on
/// qubit 2 and the Z on qubit 0, and the dense matrix is X (x) I (x) Z. Qubit q
/// is bit q of a computational-basis index.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::string_view letters, double coefficient = 1.0);

    static PauliString identity(int qubits, double coefficient = 1.0);
    /// Single letter on `qubit` of an otherwise-identity string.
    static PauliString single(int qubits, int qubit, char letter, double coefficient = 1.0);

    int qubits() const { return static_cast<int>(letters_.size()); }
    const std::string &letters() const { return letters_; }
    double coefficient() const { return coefficient_; }
    PauliString with_coefficient(double c) const;

    char letter_on(int qubit) const { return letters_[letters_.size() - 1 - qubit]; }
    std::uint64_t x_mask() const { return x_mask_; }
    std::uint64_t z_mask() const { return z_mask_; }
    int y_count() const;
    bool is_identity() const { return (x_mask_ | z_mask_) == 0; }
    bool commutes_with(const PauliString &other) const;

    /// Dense 2^n x 2^n matrix, coefficient not included.
    ComplexMatrix matrix() const;

    bool operator==(const PauliString &other) const {
        return letters_ == other.letters_ && coefficient_ == other.coefficient_;
    }

  private:
    std::string letters_;
    double coefficient_ = 1.0;
    std::uint64_t x_mask_ = 0;
    std::uint64_t z_mask_ = 0;
};

ComplexMatrix pauli_matrix(char letter);

/// All 4^n Pauli strings in lexicographic order I < X < Y < Z with the
/// leftmost letter most significant (II, IX, IY, IZ, XI, ...).
std::vector<PauliString> pauli_basis(int qubits);

/// Tr[P M] for the Pauli part of `p` (coefficient ignored), O(dim).
cplx pauli_trace(const PauliString &p, const ComplexMatrix &m);

/// Product letters of two Pauli strings up to phase (used for frame updates).
std::string pauli_product_letters(const PauliString &a, const PauliString &b);

}  // namespace pielab
