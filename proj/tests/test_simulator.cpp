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
#include <omp.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pielab/error.hpp"
#include "pielab/kernels.hpp"
#include "pielab/rng.hpp"
#include "pielab/simulator.hpp"
#include "test_support.hpp"

namespace pielab {
namespace {

using testing_support::random_circuit;

NoiseModel depolarizing(double w) { return NoiseModel::from_spec({Depolarizing{w}, NoiseScope::Both}); }

NoiseModel mixed_noise() {
    NoiseModel nm;
    nm.one_qubit = NoiseSpec{MixedPauli{0.02, 0.01, 0.03}, NoiseScope::OneQubit};
    nm.two_qubit = NoiseSpec{PauliLindblad{0.01, 0.0, 0.02}, NoiseScope::TwoQubit};
    return nm;
}

Observable random_observable(int n, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> letter(0, 3);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<PauliString> terms;
    for (int k = 0; k < 4; ++k) {
        std::string s;
        for (int q = 0; q < n; ++q) {
            s += "IXYZ"[letter(rng)];
        }
        terms.emplace_back(s, coeff(rng));
    }
    return Observable(n, terms, coeff(rng));
}

double max_abs(const ComplexMatrix &m) { return m.cwiseAbs().maxCoeff(); }

TEST(Evolve, EmptyCircuitLeavesStateUnchanged) {
    const NoisyCircuit nc = apply_noise_model(Circuit(2), depolarizing(0.1));
    EXPECT_LT(max_abs(evolve(nc, DensityState::zero(2)).matrix() - DensityState::zero(2).matrix()), 1e-15);
}

TEST(Evolve, XFlipsZero) {
    Circuit c(1);
    c.add(Gate::one(GateKind::X, 0));
    const ComplexMatrix rho = evolve(apply_noise_model(c, NoiseModel::noiseless()), DensityState::zero(1)).matrix();
    EXPECT_NEAR(rho(1, 1).real(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(rho(0, 0)), 0.0, 1e-15);
}

TEST(Evolve, DepolarizingOnZero) {
    const double w = 0.3;
    Circuit c(1);
    c.add(Gate::one(GateKind::RZ, 0, 0.0));
    const ComplexMatrix rho = evolve(apply_noise_model(c, depolarizing(w)), DensityState::zero(1)).matrix();
    EXPECT_NEAR(rho(0, 0).real(), 1 - w / 2, 1e-14);
    EXPECT_NEAR(rho(1, 1).real(), w / 2, 1e-14);
}

TEST(Evolve, WidthMismatch) {
    try {
        evolve(apply_noise_model(Circuit(2), NoiseModel::noiseless()), DensityState::zero(3));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::WidthMismatch);
    }
}

TEST(Evolve, KernelMatchesDenseReference) {
    std::mt19937_64 rng(7);
    for (int n : {1, 2, 3, 4}) {
        for (int trial = 0; trial < 3; ++trial) {
            NoisyCircuit nc = apply_noise_model(random_circuit(n, 10, rng), mixed_noise());
            nc.ops[1].frame = PauliString(nc.ops[1].gate.arity() == 1 ? "Y" : "ZX");
            const ComplexMatrix ref = reference::evolve(nc, DensityState::zero(n).matrix());
            EXPECT_LT(max_abs(evolve(nc, DensityState::zero(n)).matrix() - ref), 1e-12) << n;
        }
    }
}

TEST(Evolve, ParallelAndSerialKernelsAgreeOnWideOperators) {
    std::mt19937_64 rng(8);
    const int n = 7;
    const ComplexMatrix start = oracle::random_hermitian(1 << n, rng);
    const ComplexMatrix superop = op_superoperator(
        NoisyOp{Gate::two(GateKind::RXX, 5, 2, 0.4), std::make_shared<const Channel>(channel_for({Depolarizing{0.2}}, 2)),
                std::nullopt});
    ComplexMatrix a = start;
    ComplexMatrix b = start;
    const int targets[] = {5, 2};
    kernels::apply_superop(a, targets, superop);
    kernels::apply_superop_serial(b, targets, superop);
    EXPECT_EQ(max_abs(a - b), 0.0);
}

TEST(Evolve, PropertyTraceHermiticityPositivity) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const NoisyCircuit nc = apply_noise_model(random_circuit(3, 25, rng), mixed_noise());
        const ComplexMatrix rho = evolve(nc, DensityState::zero(3)).matrix();
        EXPECT_NEAR(rho.trace().real(), 1.0, 1e-9);
        EXPECT_LT(max_abs(rho - rho.adjoint()), 1e-9);
        EXPECT_GE(min_eigenvalue(0.5 * (rho + rho.adjoint())), -1e-10);
    }
}

TEST(Expectation, Examples) {
    EXPECT_NEAR(expectation(DensityState::zero(5), Observable::magnetization(5)), 1.0, 1e-15);
    const DensityState mixed = DensityState::from_matrix(ComplexMatrix::Identity(2, 2) / 2.0);
    EXPECT_NEAR(expectation(mixed, Observable(1, {PauliString("Z")})), 0.0, 1e-15);
}

TEST(Expectation, OffsetAndIdentityTerms) {
    const Observable o(2, {PauliString("II", 0.25), PauliString("ZZ", 2.0)}, -0.5);
    EXPECT_NEAR(o.identity_component(), -0.25, 1e-15);
    EXPECT_NEAR(expectation(DensityState::zero(2), o), 1.75, 1e-15);
    EXPECT_EQ(o.traceless_part().terms().size(), 1u);
}

TEST(Expectation, RandomObservableMatchesDenseTrace) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 5; ++trial) {
        const NoisyCircuit nc = apply_noise_model(random_circuit(3, 15, rng), mixed_noise());
        const DensityState s = evolve(nc, DensityState::zero(3));
        const Observable o = random_observable(3, rng);
        oracle::Mat dense = o.offset() * oracle::Mat::Identity(8, 8);
        for (const auto &t : o.terms()) {
            dense += t.coefficient() * oracle::pauli_string(t.letters());
        }
        EXPECT_NEAR(expectation(s, o), (dense * s.matrix()).trace().real(), 1e-12);
    }
}

TEST(Expectation, EightQubitIsingMatchesStatevector) {
    const Circuit c = build_ising_trotter(8, 0.5, 1.5, 3);
    const double sv = testing_support::magnetization(testing_support::statevector(c), 8);
    const double dm = expectation(evolve(apply_noise_model(c, NoiseModel::noiseless()), DensityState::zero(8)),
                                  Observable::magnetization(8));
    EXPECT_NEAR(dm, sv, 1e-10);
}

TEST(Expectation, MagnetizationIsNearlySizeIndependent) {
    auto mz = [](int n) {
        const Circuit c = build_ising_trotter(n, 0.5, 1.5, 3);
        return expectation(evolve(apply_noise_model(c, NoiseModel::noiseless()), DensityState::zero(n)),
                           Observable::magnetization(n));
    };
    EXPECT_LT(std::abs(mz(8) - mz(10)), 0.05);
}

TEST(Checkpoints, MatchIndependentPrefixSimulation) {
    std::mt19937_64 rng(12);
    const NoisyCircuit nc = apply_noise_model(random_circuit(3, 12, rng), mixed_noise());
    const std::vector<std::size_t> cuts = {0, 3, 3, 7, 12};
    std::size_t visits = 0;
    evolve_checkpoints(nc, DensityState::zero(3), cuts, [&](std::size_t i, const DensityState &s) {
        NoisyCircuit prefix = nc;
        prefix.ops.resize(cuts[i]);
        EXPECT_LT(max_abs(s.matrix() - reference::evolve(prefix, DensityState::zero(3).matrix())), 1e-12);
        ++visits;
    });
    EXPECT_EQ(visits, cuts.size());
}

TEST(Determinism, ThreadCountDoesNotChangeResults) {
    const Circuit c = build_ising_trotter(8, 0.5, 1.5, 3);
    const NoisyCircuit nc = apply_noise_model(fold(c, 1), depolarizing(0.01));
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const ComplexMatrix one = evolve(nc, DensityState::zero(8)).matrix();
    omp_set_num_threads(4);
    const ComplexMatrix four = evolve(nc, DensityState::zero(8)).matrix();
    omp_set_num_threads(saved);
    EXPECT_EQ(max_abs(one - four), 0.0);
}

TEST(Sampling, IdentityObservableIsExact) {
    const Observable o(2, {PauliString("II", 0.5)}, 0.25);
    const ShotResult r = sample_expectation(DensityState::zero(2), o, 100, 1);
    EXPECT_DOUBLE_EQ(r.mean, 0.75);
    EXPECT_EQ(r.std_error, 0.0);
}

TEST(Sampling, ZOnZeroIsDeterministic) {
    for (long shots : {1L, 10L, 4096L}) {
        const ShotResult r = sample_expectation(DensityState::zero(1), Observable(1, {PauliString("Z")}), shots, 3);
        EXPECT_EQ(r.mean, 1.0);
        EXPECT_EQ(r.std_error, 0.0);
        EXPECT_EQ(r.shots, shots);
    }
}

TEST(Sampling, ZOnPlusConcentrates) {
    Circuit c(1);
    c.add(Gate::one(GateKind::H, 0));
    const NoisyCircuit nc = apply_noise_model(c, NoiseModel::noiseless());
    const Observable z(1, {PauliString("Z")});
    int inside = 0;
    const int seeds = 300;
    for (int s = 0; s < seeds; ++s) {
        inside += std::abs(sample_expectation(nc, z, 4096, derive_seed(77, s)).mean) <= 4.0 / 64.0;
    }
    EXPECT_GE(inside, static_cast<int>(std::ceil(0.99 * seeds)));
}

TEST(Sampling, SameSeedSameResult) {
    const NoisyCircuit nc = apply_noise_model(build_ising_trotter(3, 0.5, 1.0, 2), depolarizing(0.02));
    const Observable o(3, {PauliString("XXI", 0.5), PauliString("IYZ", -0.3), PauliString("ZZZ", 1.0)});
    const ShotResult a = sample_expectation(nc, o, 500, 42);
    const ShotResult b = sample_expectation(nc, o, 500, 42);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Sampling, SettingsGroupQubitwiseCommutingTerms) {
    const Observable o(2, {PauliString("ZI"), PauliString("IZ"), PauliString("XI"), PauliString("ZZ"),
                           PauliString("II")});
    const auto settings = measurement_settings(o);
    ASSERT_EQ(settings.size(), 2u);
    EXPECT_EQ(settings[0].basis, "ZZ");
    EXPECT_EQ(settings[0].terms.size(), 3u);
    EXPECT_EQ(settings[1].basis, "XI");
}

TEST(Sampling, PropertyMeanConvergesWithinFiveStandardErrors) {
    std::mt19937_64 rng(13);
    int good = 0;
    int total = 0;
    for (int circuit = 0; circuit < 20; ++circuit) {
        const NoisyCircuit nc = apply_noise_model(random_circuit(3, 12, rng), mixed_noise());
        const DensityState s = evolve(nc, DensityState::zero(3));
        const Observable o = random_observable(3, rng);
        const double exact = expectation(s, o);
        for (int k = 0; k < 50; ++k) {
            const ShotResult r = sample_expectation(s, o, 256, derive_seed(circuit, k));
            good += std::abs(r.mean - exact) <= 5.0 * r.std_error + 1e-12;
            ++total;
        }
    }
    EXPECT_EQ(total, 1000);
    EXPECT_GE(good, 990);
}

TEST(Sampling, ShotStatisticsStandardErrorMatchesBinomial) {
    Circuit c(1);
    c.add(Gate::one(GateKind::RY, 0, 1.0));
    const DensityState s = evolve(apply_noise_model(c, NoiseModel::noiseless()), DensityState::zero(1));
    const ShotResult r = shot_statistics(s, Observable(1, {PauliString("Z")}), 4096);
    const double m = std::cos(1.0);
    EXPECT_NEAR(r.mean, m, 1e-14);
    EXPECT_NEAR(r.std_error, std::sqrt((1 - m * m) / 4096.0), 1e-12);
}

TEST(Density, FromMatrixValidates) {
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    EXPECT_THROW(DensityState::from_matrix(bad), Error);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    EXPECT_THROW(DensityState::from_matrix(bad), Error);
}

}  // namespace
}  // namespace pielab
