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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pielab/error.hpp"
#include "pielab/linalg.hpp"
#include "pielab/pauli.hpp"

namespace pielab {
namespace {

TEST(Kron, IdentityTimesIdentity) {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    EXPECT_TRUE(kron(i2, i2).isApprox(ComplexMatrix::Identity(4, 4)));
}

TEST(Kron, ZTimesZIsDiagonal) {
    const ComplexMatrix zz = kron(pauli_matrix('Z'), pauli_matrix('Z'));
    ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
    expect.diagonal() << 1, -1, -1, 1;
    EXPECT_TRUE(zz.isApprox(expect));
}

TEST(Kron, XTimesZEntryMatchesIndexFormula) {
    const ComplexMatrix a = pauli_matrix('X');
    const ComplexMatrix b = pauli_matrix('Z');
    const ComplexMatrix k = kron(a, b);
    EXPECT_EQ(k(2, 0), a(1, 0) * b(0, 0));
    EXPECT_EQ(k(2, 0), cplx(1.0));
}

TEST(Kron, RandomMatricesMatchIndexFormula) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = oracle::random_hermitian(3, rng);
        const auto b = oracle::random_unitary(4, rng);
        EXPECT_LT((kron(a, b) - oracle::kron(a, b)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(MinEigenvalue, Diagonal) {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d.diagonal() << 1, 2, 3;
    EXPECT_NEAR(min_eigenvalue(d), 1.0, 1e-14);
}

TEST(MinEigenvalue, PauliX) { EXPECT_NEAR(min_eigenvalue(pauli_matrix('X')), -1.0, 1e-14); }

TEST(MinEigenvalue, RandomHermitianMatchesCharacteristicPolynomialRoot) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const auto h = oracle::random_hermitian(4, rng);
        EXPECT_NEAR(min_eigenvalue(h), oracle::min_eig_charpoly(h), 1e-9);
    }
}

TEST(MinEigenvalue, RejectsNonHermitian) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    try {
        min_eigenvalue(m);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::NonHermitian);
    }
}

TEST(Linalg, HelperPredicates) {
    EXPECT_EQ(log2_dim(8), 3);
    EXPECT_EQ(log2_dim(6), -1);
    EXPECT_TRUE(is_hermitian(pauli_matrix('Y')));
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 0) = std::nan("");
    EXPECT_FALSE(all_finite(bad));
}

}  // namespace
}  // namespace pielab
