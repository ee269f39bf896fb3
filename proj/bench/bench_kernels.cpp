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

// Block kernel (OpenMP and single-threaded) against the dense reference.

#include <benchmark/benchmark.h>

#include "pielab/kernels.hpp"
#include "pielab/simulator.hpp"

namespace {

using namespace pielab;

NoisyCircuit ising_circuit(int n, int folds) {
    const Circuit c = fold(build_ising_trotter(n, 0.5, 1.5, 3), folds);
    return apply_noise_model(c, NoiseModel::from_spec({Depolarizing{0.005}, NoiseScope::Both}));
}

ComplexMatrix two_qubit_superop() {
    NoisyOp op{Gate::two(GateKind::RXX, 0, 1, 0.3), nullptr, std::nullopt};
    op.noise = std::make_shared<Channel>(channel_for({Depolarizing{0.01}, NoiseScope::Both}, 2));
    return op_superoperator(op);
}

void BM_SuperopParallel(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    ComplexMatrix rho = DensityState::zero(n).matrix();
    const ComplexMatrix s = two_qubit_superop();
    const int t[2] = {0, n - 1};
    for (auto _ : state) {
        kernels::apply_superop(rho, t, s);
        benchmark::DoNotOptimize(rho.data());
    }
}

void BM_SuperopSerial(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    ComplexMatrix rho = DensityState::zero(n).matrix();
    const ComplexMatrix s = two_qubit_superop();
    const int t[2] = {0, n - 1};
    for (auto _ : state) {
        kernels::apply_superop_serial(rho, t, s);
        benchmark::DoNotOptimize(rho.data());
    }
}

void BM_EvolveKernel(benchmark::State &state) {
    const NoisyCircuit c = ising_circuit(static_cast<int>(state.range(0)), 0);
    const DensityState rho = DensityState::zero(c.qubits);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(c, rho).matrix().data());
    }
}

void BM_EvolveReference(benchmark::State &state) {
    const NoisyCircuit c = ising_circuit(static_cast<int>(state.range(0)), 0);
    const ComplexMatrix rho = DensityState::zero(c.qubits).matrix();
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::evolve(c, rho).data());
    }
}

}  // namespace

BENCHMARK(BM_SuperopParallel)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SuperopSerial)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EvolveKernel)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvolveReference)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
