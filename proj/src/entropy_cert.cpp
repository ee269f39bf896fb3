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

#include "pielab/entropy_cert.hpp"

#include <cmath>

#include "pielab/error.hpp"

namespace pielab {

namespace {

constexpr double kPsdFloor = -1e-10;

ComplexMatrix hermitized(const ComplexMatrix &j, const char *what) {
    if (!all_finite(j) || !is_hermitian(j, 1e-8)) {
        fail(Errc::NonHermitian, std::string(what) + " Choi matrix is not Hermitian");
    }
    return 0.5 * (j + j.adjoint());
}

}  // namespace

DmaxResult dmax_choi(const ComplexMatrix &j_ideal, const ComplexMatrix &j_noisy, double tol) {
    if (!(tol > 0.0)) {
        fail(Errc::InvalidParams, "bisection tolerance must be positive");
    }
    if (j_ideal.rows() != j_noisy.rows() || j_ideal.cols() != j_noisy.cols() || !is_square(j_ideal)) {
        fail(Errc::DimensionMismatch, "Choi matrices differ in size");
    }
    const ComplexMatrix ji = hermitized(j_ideal, "ideal");
    const ComplexMatrix jn = hermitized(j_noisy, "noisy");
    auto feasible = [&](double s) { return min_eigenvalue(s * jn - ji) >= kPsdFloor; };

    if (feasible(1.0)) {
        return {1.0, 0.0};
    }
    double lo = 1.0;
    double hi = 2.0;
    while (!feasible(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9) {
            fail(Errc::Infeasible, "no s up to 1e9 makes s*J_noisy dominate J_ideal");
        }
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? hi : lo) = mid;
    }
    return {hi, std::log2(hi)};
}

DmaxResult dmax(const Channel &ideal, const Channel &noisy, double tol) {
    if (ideal.qubits() != noisy.qubits()) {
        fail(Errc::DimensionMismatch, "channels act on different qubit counts");
    }
    return dmax_choi(choi_of(ideal), choi_of(noisy), tol);
}

ComplexMatrix circuit_choi(const NoisyCircuit &circuit) {
    if (circuit.qubits > kMaxCertQubits) {
        fail(Errc::TooLarge, "circuit Choi matrices are limited to " + std::to_string(kMaxCertQubits) + " qubits");
    }
    const Eigen::Index d = Eigen::Index{1} << circuit.qubits;
    ComplexMatrix j = ComplexMatrix::Zero(d * d, d * d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            ComplexMatrix e = ComplexMatrix::Zero(d, d);
            e(a, b) = 1.0;
            j.block(a * d, b * d, d, d) = evolve_operator(circuit, std::move(e));
        }
    }
    return j;
}

CertReport certify(const Circuit &base, const NoiseModel &nm, const Observable &obs, const CertOptions &opt) {
    if (opt.direct && base.qubits() > kMaxCertQubits) {
        fail(Errc::TooLarge, "direct certification is limited to " + std::to_string(kMaxCertQubits) + " qubits");
    }
    CertReport r;
    r.pie = fit_pie(collect(base, nm, obs, opt.collect), opt.fit);
    r.s_from_slope = *r.pie.s_estimate;
    if (opt.direct) {
        const ComplexMatrix ji = choi_of(Channel::unitary(base.unitary()));
        const ComplexMatrix jn = circuit_choi(apply_noise_model(base, nm));
        const DmaxResult d = dmax_choi(ji, jn, opt.tol);
        r.s_direct = d.s_direct;
        r.d_max_bits = d.d_max_bits;
        r.relative_gap = std::abs(r.s_from_slope - d.s_direct) / d.s_direct;
    }
    return r;
}

}  // namespace pielab
