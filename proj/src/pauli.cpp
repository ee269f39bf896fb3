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

#include "pielab/pauli.hpp"

#include <bit>
#include <cmath>

#include "pielab/error.hpp"

namespace pielab {

namespace {

constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

int letter_index(char c) {
    switch (c) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
        default: return -1;
    }
}

}  // namespace

PauliString::PauliString(std::string_view letters, double coefficient)
    : letters_(letters), coefficient_(coefficient) {
    if (letters_.empty() || letters_.size() > 62) {
        fail(Errc::InvalidParams, "Pauli string length must be in [1, 62]");
    }
    if (!std::isfinite(coefficient)) {
        fail(Errc::InvalidParams, "Pauli coefficient must be finite");
    }
    const int n = qubits();
    for (int q = 0; q < n; ++q) {
        const char c = letter_on(q);
        const int k = letter_index(c);
        if (k < 0) {
            fail(Errc::ParseError, "invalid Pauli letter '" + std::string(1, c) + "' in " + letters_);
        }
        if (k == 1 || k == 2) {
            x_mask_ |= std::uint64_t{1} << q;
        }
        if (k == 2 || k == 3) {
            z_mask_ |= std::uint64_t{1} << q;
        }
    }
}

PauliString PauliString::identity(int qubits, double coefficient) {
    return PauliString(std::string(static_cast<std::size_t>(qubits), 'I'), coefficient);
}

PauliString PauliString::single(int qubits, int qubit, char letter, double coefficient) {
    std::string s(static_cast<std::size_t>(qubits), 'I');
    s[static_cast<std::size_t>(qubits - 1 - qubit)] = letter;
    return PauliString(s, coefficient);
}

PauliString PauliString::with_coefficient(double c) const {
    PauliString out = *this;
    out.coefficient_ = c;
    return out;
}

int PauliString::y_count() const {
    return std::popcount(x_mask_ & z_mask_);
}

bool PauliString::commutes_with(const PauliString &other) const {
    const int anti = std::popcount(x_mask_ & other.z_mask_) + std::popcount(z_mask_ & other.x_mask_);
    return anti % 2 == 0;
}

ComplexMatrix PauliString::matrix() const {
    const std::int64_t dim = std::int64_t{1} << qubits();
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    const cplx iy[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    const cplx base = iy[y_count() % 4];
    for (std::int64_t k = 0; k < dim; ++k) {
        const auto col = static_cast<std::uint64_t>(k);
        const double sign = (std::popcount(col & z_mask_) % 2) ? -1.0 : 1.0;
        m(static_cast<Eigen::Index>(col ^ x_mask_), k) = base * sign;
    }
    return m;
}

ComplexMatrix pauli_matrix(char letter) {
    return PauliString(std::string_view(&letter, 1)).matrix();
}

std::vector<PauliString> pauli_basis(int qubits) {
    const std::size_t count = std::size_t{1} << (2 * qubits);
    std::vector<PauliString> out;
    out.reserve(count);
    std::string s(static_cast<std::size_t>(qubits), 'I');
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rest = idx;
        for (int k = qubits - 1; k >= 0; --k) {
            s[static_cast<std::size_t>(k)] = kLetters[rest % 4];
            rest /= 4;
        }
        out.emplace_back(s);
    }
    return out;
}

cplx pauli_trace(const PauliString &p, const ComplexMatrix &m) {
    const std::int64_t dim = m.rows();
    const std::uint64_t xm = p.x_mask();
    const std::uint64_t zm = p.z_mask();
    double re = 0.0;
    double im = 0.0;
    for (std::int64_t k = 0; k < dim; ++k) {
        const auto kk = static_cast<std::uint64_t>(k);
        const cplx v = m(k, static_cast<Eigen::Index>(kk ^ xm));
        if (std::popcount(kk & zm) % 2) {
            re -= v.real();
            im -= v.imag();
        } else {
            re += v.real();
            im += v.imag();
        }
    }
    const cplx iy[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    return iy[p.y_count() % 4] * cplx(re, im);
}

std::string pauli_product_letters(const PauliString &a, const PauliString &b) {
    if (a.qubits() != b.qubits()) {
        fail(Errc::DimensionMismatch, "Pauli product of strings with different widths");
    }
    std::string out(a.letters().size(), 'I');
    for (int q = 0; q < a.qubits(); ++q) {
        const int ka = letter_index(a.letter_on(q));
        const int kb = letter_index(b.letter_on(q));
        // I,X,Y,Z as (x,z) bits: 0=(0,0) 1=(1,0) 2=(1,1) 3=(0,1)
        const int xa = (ka == 1 || ka == 2), za = (ka == 2 || ka == 3);
        const int xb = (kb == 1 || kb == 2), zb = (kb == 2 || kb == 3);
        const int x = xa ^ xb, z = za ^ zb;
        out[out.size() - 1 - static_cast<std::size_t>(q)] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    return out;
}

}  // namespace pielab
