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

#include <random>
#include <string>

#include "oracles.hpp"
#include "test_support.hpp"
#include "pielab/circuit.hpp"
#include "pielab/error.hpp"

namespace pielab {
namespace {

using testing_support::random_circuit;

oracle::Mat oracle_unitary(const Circuit &c) { return testing_support::unitary(c); }

double max_abs(const oracle::Mat &m) { return m.cwiseAbs().maxCoeff(); }

TEST(Gate, MatricesMatchTextbookDefinitions) {
    for (const char *name : {"H", "X", "Y", "RX", "RY", "RZ", "RXX", "RZZ", "CNOT"}) {
        const GateKind k = gate_kind_from_name(name);
        const Gate g = gate_arity(k) == 1 ? Gate::one(k, 0, 0.37) : Gate::two(k, 0, 1, 0.37);
        EXPECT_LT(max_abs(g.matrix() - oracle::gate(name, g.angle)), 1e-15) << name;
    }
}

TEST(Gate, UnknownNameIsParseError) {
    try {
        gate_kind_from_name("T");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::ParseError);
    }
}

TEST(Circuit, RandomCircuitUnitaryMatchesStatevectorOracle) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const Circuit c = random_circuit(3, 12, rng);
        EXPECT_LT(max_abs(c.unitary() - oracle_unitary(c)), 1e-12);
    }
}

TEST(Circuit, RejectsInvalidGates) {
    Circuit c(2);
    EXPECT_THROW(c.add(Gate::one(GateKind::RZ, 2, 0.1)), Error);
    EXPECT_THROW(c.add(Gate::two(GateKind::CNOT, 1, 1)), Error);
    EXPECT_THROW(c.add(Gate::one(GateKind::RZ, 0, std::nan(""))), Error);
}

TEST(Ising, ZeroTimeIsIdentity) {
    const Circuit c = build_ising_trotter(2, 0.5, 0.0, 1);
    EXPECT_LT(max_abs(c.unitary() - oracle::Mat::Identity(4, 4)), 1e-12);
    EXPECT_EQ(c.fold_count(), 0);
}

TEST(Ising, FourQubitGateCounts) {
    const Circuit c = build_ising_trotter(4, 0.5, 0.5, 1);
    int rxx = 0;
    int rz = 0;
    for (const Gate &g : c.gates()) {
        rxx += g.kind == GateKind::RXX;
        rz += g.kind == GateKind::RZ;
    }
    EXPECT_EQ(rxx, 4);
    EXPECT_EQ(rz, 4);
    EXPECT_EQ(c.size(), 8u);
}

oracle::Mat ising_bond_sum(int n) {
    const oracle::Mat x = oracle::pauli('X');
    oracle::Mat h = oracle::Mat::Zero(1 << n, 1 << n);
    for (int q = 0; q < n; ++q) {
        h += oracle::on_qubit(x, q, n) * oracle::on_qubit(x, (q + 1) % n, n);
    }
    return h;
}

oracle::Mat field_sum(int n) {
    oracle::Mat h = oracle::Mat::Zero(1 << n, 1 << n);
    for (int q = 0; q < n; ++q) {
        h += oracle::on_qubit(oracle::pauli('Z'), q, n);
    }
    return h;
}

TEST(Ising, SingleStepIsTheProductFormula) {
    const int n = 4;
    const double t = 0.5;
    const double field = 0.5;
    const oracle::cplx i(0, 1);
    const oracle::Mat step = oracle::expm(i * field * t * field_sum(n)) * oracle::expm(i * t * ising_bond_sum(n));
    EXPECT_LT(max_abs(build_ising_trotter(n, field, t, 1).unitary() - step), 1e-12);
}

TEST(Ising, TrotterErrorShrinksTowardExactDynamics) {
    const int n = 4;
    const double t = 0.5;
    const oracle::cplx i(0, 1);
    const oracle::Mat hamiltonian = -ising_bond_sum(n) - 0.5 * field_sum(n);
    const oracle::Mat exact = oracle::expm(-i * t * hamiltonian);
    std::vector<double> errs;
    for (int steps : {1, 4, 16, 64}) {
        errs.push_back(max_abs(build_ising_trotter(n, 0.5, t, steps).unitary() - exact));
    }
    for (std::size_t k = 1; k < errs.size(); ++k) {
        EXPECT_LT(errs[k], errs[k - 1]);
    }
    // First-order product formula: error ~ 1/R once R is large.
    EXPECT_NEAR(errs[2] / errs[3], 4.0, 0.4);
}

TEST(Ising, RejectsBadParameters) {
    for (auto [n, r] : {std::pair{1, 1}, std::pair{4, 0}}) {
        try {
            build_ising_trotter(n, 0.5, 1.0, r);
            FAIL();
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), Errc::InvalidParams);
        }
    }
}

TEST(Su2, AngleCountAndShape) {
    EXPECT_EQ(su2_angle_count(4, 2), 24u);
    const std::vector<double> zeros(24, 0.0);
    const Circuit c = build_su2_ansatz(4, 2, zeros);
    int cnot = 0;
    for (const Gate &g : c.gates()) {
        cnot += g.kind == GateKind::CNOT;
    }
    EXPECT_EQ(cnot, 6);
    EXPECT_EQ(c.size(), 30u);
    // Zero rotations: the CNOT ladder fixes |0000>.
    const oracle::Mat u = c.unitary();
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-12);
}

TEST(Su2, StatevectorMatchesDenseProduct) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> a(-3.1, 3.1);
    std::vector<double> angles(su2_angle_count(2, 1));
    for (double &x : angles) {
        x = a(rng);
    }
    const Circuit c = build_su2_ansatz(2, 1, angles);
    // Independent gate-by-gate application to |00>.
    oracle::Vec psi = oracle::Vec::Zero(4);
    psi(0) = 1.0;
    std::size_t k = 0;
    for (int q = 0; q < 2; ++q) {
        oracle::apply(psi, oracle::gate("RY", angles[k++]), {q});
    }
    for (int q = 0; q < 2; ++q) {
        oracle::apply(psi, oracle::gate("RZ", angles[k++]), {q});
    }
    oracle::apply(psi, oracle::gate("CNOT", 0), {0, 1});
    for (int q = 0; q < 2; ++q) {
        oracle::apply(psi, oracle::gate("RY", angles[k++]), {q});
    }
    for (int q = 0; q < 2; ++q) {
        oracle::apply(psi, oracle::gate("RZ", angles[k++]), {q});
    }
    EXPECT_LT((c.unitary().col(0) - psi).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Su2, RejectsWrongAngleCount) {
    const std::vector<double> angles(5, 0.0);
    try {
        build_su2_ansatz(2, 1, angles);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::AngleCountMismatch);
    }
}

TEST(Fold, ZeroIsUnchanged) {
    const Circuit c = build_ising_trotter(3, 0.5, 1.0, 2);
    const Circuit f = fold(c, 0);
    EXPECT_EQ(f.gates(), c.gates());
    EXPECT_EQ(f.noise_scale(), 1);
}

TEST(Fold, MultiplicityAndLayout) {
    const Circuit c = build_ising_trotter(3, 0.5, 1.0, 2);
    const Circuit f = fold(c, 2);
    EXPECT_EQ(f.size(), 5 * c.size());
    EXPECT_EQ(f.noise_scale(), 5);
    EXPECT_EQ(f.fold_count(), 2);
    EXPECT_EQ(f.base_size(), c.size());
    const Circuit inv = adjoint(c);
    for (std::size_t k = 0; k < c.size(); ++k) {
        EXPECT_EQ(f.gates()[k], c.gates()[k]);
        EXPECT_EQ(f.gates()[c.size() + k], inv.gates()[k]);
        EXPECT_EQ(f.gates()[2 * c.size() + k], c.gates()[k]);
    }
    EXPECT_THROW(fold(c, -1), Error);
}

TEST(Fold, AdjointNegatesAnglesAndKeepsSelfInverseGates) {
    Circuit c(2);
    c.add(Gate::one(GateKind::H, 0)).add(Gate::one(GateKind::RY, 1, 0.3)).add(Gate::two(GateKind::CNOT, 0, 1));
    const Circuit a = adjoint(c);
    EXPECT_EQ(a.gates()[0], c.gates()[2]);
    EXPECT_EQ(a.gates()[1].angle, -0.3);
    EXPECT_EQ(a.gates()[2], c.gates()[0]);
}

TEST(Fold, PropertyAdjointIsInvolution) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit c = random_circuit(3, 10, rng);
        EXPECT_EQ(adjoint(adjoint(c)), c);
    }
}

TEST(Fold, PropertyFoldedUnitaryEqualsBase) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const Circuit c = random_circuit(3, 8, rng);
        const oracle::Mat base = oracle_unitary(c);
        for (int n = 0; n <= 4; ++n) {
            EXPECT_LT(max_abs(oracle_unitary(fold(c, n)) - base), 1e-10) << n;
        }
    }
}

}  // namespace
}  // namespace pielab
