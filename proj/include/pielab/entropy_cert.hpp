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

#include <optional>

#include "pielab/channel.hpp"
#include "pielab/mitigation.hpp"

namespace pielab {

struct DmaxResult {
    double s_direct = 1.0;
    double d_max_bits = 0.0;
};

/// Smallest s >= 1 with s*J_noisy - J_ideal >= 0 (eigenvalue floor -1e-10),
/// by bisection to within `tol`.
DmaxResult dmax(const Channel &ideal, const Channel &noisy, double tol = 1e-9);
DmaxResult dmax_choi(const ComplexMatrix &j_ideal, const ComplexMatrix &j_noisy, double tol = 1e-9);

/// Largest register for which circuit Choi matrices are built.
inline constexpr int kMaxCertQubits = 3;

/// Choi matrix of the whole noisy circuit, sum_ab |a><b| (x) C(|a><b|).
ComplexMatrix circuit_choi(const NoisyCircuit &circuit);

struct CertOptions {
    CollectOptions collect{{0, 1, 2, 3}, 0, true, 0};
    FitOptions fit;
    bool direct = true;
    double tol = 1e-9;
};

struct CertReport {
    std::optional<double> s_direct;
    std::optional<double> d_max_bits;
    double s_from_slope = 1.0;
    std::optional<double> relative_gap;
    FitResult pie;
};

CertReport certify(const Circuit &base, const NoiseModel &nm, const Observable &obs, const CertOptions &opt);

}  // namespace pielab
