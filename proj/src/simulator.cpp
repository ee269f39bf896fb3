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

#include "pielab/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <tuple>

#include "pielab/error.hpp"
#include "pielab/kernels.hpp"
#include "pielab/rng.hpp"

namespace pielab {

namespace {

void check_width(int qubits) {
    if (qubits < 1 || qubits > kMaxQubits) {
        fail(Errc::TooLarge, "dense simulation supports 1.." + std::to_string(kMaxQubits) + " qubits, got " +
                                 std::to_string(qubits));
    }
}

using OpKey = std::tuple<GateKind, double, const Channel *, std::string>;

OpKey key_of(const NoisyOp &op) {
    return {op.gate.kind, op.gate.angle, op.noise.get(), op.frame ? op.frame->letters() : std::string()};
}

// Compiles each op into a local superoperator, reusing identical ones.
std::vector<const ComplexMatrix *> compile(const NoisyCircuit &circuit, std::map<OpKey, ComplexMatrix> &cache) {
    std::vector<const ComplexMatrix *> out;
    out.reserve(circuit.ops.size());
    for (const NoisyOp &op : circuit.ops) {
        for (int q : op.gate.qubits()) {
            if (q < 0 || q >= circuit.qubits) {
                fail(Errc::WidthMismatch, "gate target outside the register");
            }
        }
        auto [it, inserted] = cache.try_emplace(key_of(op));
        if (inserted) {
            it->second = op_superoperator(op);
        }
        out.push_back(&it->second);
    }
    return out;
}

void run_ops(ComplexMatrix &m, const NoisyCircuit &circuit, const std::vector<const ComplexMatrix *> &sops,
             std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        kernels::apply_superop(m, circuit.ops[i].gate.qubits(), *sops[i]);
    }
}

ComplexMatrix rotation_to(char letter) {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix h(2, 2);
    h << r, r, r, -r;
    if (letter == 'X') {
        return h;
    }
    ComplexMatrix sdg = ComplexMatrix::Identity(2, 2);
    sdg(1, 1) = cplx(0.0, -1.0);
    return h * sdg;
}

std::uint64_t support_mask(const PauliString &p) { return p.x_mask() | p.z_mask(); }

// Per-bitstring value of the terms of one setting.
std::vector<double> setting_values(const Observable &obs, const MeasurementSetting &s) {
    const std::size_t dim = std::size_t{1} << obs.qubits();
    std::vector<double> v(dim, 0.0);
    for (std::size_t t : s.terms) {
        const PauliString &p = obs.terms()[t];
        const std::uint64_t mask = support_mask(p);
        for (std::size_t b = 0; b < dim; ++b) {
            v[b] += (std::popcount(b & mask) & 1) ? -p.coefficient() : p.coefficient();
        }
    }
    return v;
}

double identity_terms(const Observable &obs) { return obs.identity_component(); }

}  // namespace

DensityState DensityState::zero(int qubits) {
    check_width(qubits);
    const Eigen::Index dim = Eigen::Index{1} << qubits;
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    rho(0, 0) = 1.0;
    return DensityState(qubits, std::move(rho));
}

DensityState DensityState::from_matrix(ComplexMatrix rho, double tol) {
    const int n = log2_dim(rho.rows());
    if (rho.rows() != rho.cols() || n < 1) {
        fail(Errc::DimensionMismatch, "density matrix must be 2^n x 2^n");
    }
    check_width(n);
    if (!all_finite(rho) || !is_hermitian(rho, tol)) {
        fail(Errc::NonHermitian, "density matrix must be Hermitian and finite");
    }
    if (std::abs(rho.trace() - cplx(1.0)) > tol) {
        fail(Errc::InvalidParams, "density matrix must have unit trace");
    }
    if (min_eigenvalue(rho, tol) < -tol) {
        fail(Errc::InvalidParams, "density matrix must be positive semidefinite");
    }
    return DensityState(n, std::move(rho));
}

Observable::Observable(int qubits, std::vector<PauliString> terms, double offset)
    : qubits_(qubits), terms_(std::move(terms)), offset_(offset) {
    if (qubits < 1 || qubits > 62) {
        fail(Errc::InvalidParams, "observable width out of range");
    }
    if (!std::isfinite(offset)) {
        fail(Errc::InvalidParams, "observable offset must be finite");
    }
    for (const auto &t : terms_) {
        if (t.qubits() != qubits) {
            fail(Errc::WidthMismatch, "Pauli term " + t.letters() + " does not match observable width");
        }
    }
}

Observable Observable::magnetization(int qubits) {
    std::vector<PauliString> terms;
    for (int q = 0; q < qubits; ++q) {
        terms.push_back(PauliString::single(qubits, q, 'Z', 1.0 / qubits));
    }
    return Observable(qubits, std::move(terms));
}

double Observable::identity_component() const {
    double c = offset_;
    for (const auto &t : terms_) {
        if (t.is_identity()) {
            c += t.coefficient();
        }
    }
    return c;
}

Observable Observable::traceless_part() const {
    std::vector<PauliString> kept;
    for (const auto &t : terms_) {
        if (!t.is_identity()) {
            kept.push_back(t);
        }
    }
    return Observable(qubits_, std::move(kept));
}

ComplexMatrix Observable::matrix() const {
    const Eigen::Index dim = Eigen::Index{1} << qubits_;
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim) * offset_;
    for (const auto &t : terms_) {
        m += t.coefficient() * t.matrix();
    }
    return m;
}

ComplexMatrix op_superoperator(const NoisyOp &op) {
    std::vector<ComplexMatrix> ks{op.gate.matrix()};
    if (op.noise) {
        std::vector<ComplexMatrix> next;
        for (const auto &k : kraus_of(*op.noise)) {
            if (k.rows() != ks.front().rows()) {
                fail(Errc::DimensionMismatch, "noise channel width does not match gate arity");
            }
            for (const auto &g : ks) {
                next.push_back(k * g);
            }
        }
        ks = std::move(next);
    }
    if (op.frame) {
        const ComplexMatrix p = op.frame->matrix();
        if (p.rows() != ks.front().rows()) {
            fail(Errc::DimensionMismatch, "frame Pauli width does not match gate arity");
        }
        for (auto &k : ks) {
            k = p * k;
        }
    }
    return superoperator_of(ks);
}

DensityState evolve(const NoisyCircuit &circuit, const DensityState &initial) {
    if (circuit.qubits != initial.qubits()) {
        fail(Errc::WidthMismatch, "circuit and state widths differ");
    }
    std::map<OpKey, ComplexMatrix> cache;
    const auto sops = compile(circuit, cache);
    ComplexMatrix rho = initial.matrix();
    run_ops(rho, circuit, sops, 0, sops.size());
    return DensityState(initial.qubits(), std::move(rho));
}

ComplexMatrix evolve_operator(const NoisyCircuit &circuit, ComplexMatrix m) {
    if (m.rows() != m.cols() || m.rows() != (Eigen::Index{1} << circuit.qubits)) {
        fail(Errc::WidthMismatch, "operator does not match circuit width");
    }
    std::map<OpKey, ComplexMatrix> cache;
    const auto sops = compile(circuit, cache);
    run_ops(m, circuit, sops, 0, sops.size());
    return m;
}

void evolve_checkpoints(const NoisyCircuit &circuit, const DensityState &initial, std::span<const std::size_t> cuts,
                        const std::function<void(std::size_t, const DensityState &)> &visit) {
    if (circuit.qubits != initial.qubits()) {
        fail(Errc::WidthMismatch, "circuit and state widths differ");
    }
    std::map<OpKey, ComplexMatrix> cache;
    const auto sops = compile(circuit, cache);
    DensityState state = initial;
    std::size_t done = 0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        if (cuts[i] < done || cuts[i] > sops.size()) {
            fail(Errc::InvalidParams, "checkpoints must be nondecreasing and within the circuit");
        }
        run_ops(state.rho_, circuit, sops, done, cuts[i]);
        done = cuts[i];
        visit(i, state);
    }
}

double expectation(const DensityState &state, const Observable &obs) {
    if (state.qubits() != obs.qubits()) {
        fail(Errc::WidthMismatch, "observable and state widths differ");
    }
    double acc = obs.offset();
    for (const auto &t : obs.terms()) {
        acc += t.coefficient() * pauli_trace(t, state.matrix()).real();
    }
    return acc;
}

std::vector<MeasurementSetting> measurement_settings(const Observable &obs) {
    std::vector<MeasurementSetting> out;
    for (std::size_t i = 0; i < obs.terms().size(); ++i) {
        const PauliString &p = obs.terms()[i];
        if (p.is_identity()) {
            continue;
        }
        bool placed = false;
        for (auto &s : out) {
            bool ok = true;
            for (std::size_t k = 0; k < s.basis.size() && ok; ++k) {
                const char a = s.basis[k];
                const char b = p.letters()[k];
                ok = a == 'I' || b == 'I' || a == b;
            }
            if (ok) {
                for (std::size_t k = 0; k < s.basis.size(); ++k) {
                    if (s.basis[k] == 'I') {
                        s.basis[k] = p.letters()[k];
                    }
                }
                s.terms.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            out.push_back({p.letters(), {i}});
        }
    }
    return out;
}

std::vector<double> outcome_distribution(const DensityState &state, const std::string &basis) {
    const int n = state.qubits();
    if (static_cast<int>(basis.size()) != n) {
        fail(Errc::WidthMismatch, "measurement basis does not match state width");
    }
    const bool rotate = std::any_of(basis.begin(), basis.end(), [](char c) { return c == 'X' || c == 'Y'; });
    const ComplexMatrix *rho = &state.matrix();
    ComplexMatrix rotated;
    if (rotate) {
        rotated = state.matrix();
        for (int q = 0; q < n; ++q) {
            const char c = basis[static_cast<std::size_t>(n - 1 - q)];
            if (c == 'X' || c == 'Y') {
                const int t[1] = {q};
                kernels::apply_superop(rotated, t, superoperator_of({rotation_to(c)}));
            }
        }
        rho = &rotated;
    }
    std::vector<double> p(static_cast<std::size_t>(rho->rows()));
    for (Eigen::Index i = 0; i < rho->rows(); ++i) {
        p[static_cast<std::size_t>(i)] = std::max(0.0, (*rho)(i, i).real());
    }
    return p;
}

ShotResult shot_statistics(const DensityState &state, const Observable &obs, long shots) {
    if (shots < 1) {
        fail(Errc::InvalidParams, "shots must be at least 1");
    }
    if (state.qubits() != obs.qubits()) {
        fail(Errc::WidthMismatch, "observable and state widths differ");
    }
    double mean = identity_terms(obs);
    double var = 0.0;
    for (const auto &s : measurement_settings(obs)) {
        const auto p = outcome_distribution(state, s.basis);
        const auto v = setting_values(obs, s);
        double m1 = 0.0;
        double m2 = 0.0;
        for (std::size_t b = 0; b < p.size(); ++b) {
            m1 += p[b] * v[b];
            m2 += p[b] * v[b] * v[b];
        }
        mean += m1;
        var += std::max(0.0, m2 - m1 * m1);
    }
    return {mean, std::sqrt(var / static_cast<double>(shots)), shots};
}

ShotResult sample_expectation(const DensityState &state, const Observable &obs, long shots, std::uint64_t seed) {
    if (shots < 1) {
        fail(Errc::InvalidParams, "shots must be at least 1");
    }
    if (state.qubits() != obs.qubits()) {
        fail(Errc::WidthMismatch, "observable and state widths differ");
    }
    double mean = identity_terms(obs);
    double var = 0.0;
    const auto settings = measurement_settings(obs);
    for (std::size_t si = 0; si < settings.size(); ++si) {
        const auto p = outcome_distribution(state, settings[si].basis);
        const auto v = setting_values(obs, settings[si]);
        std::vector<double> cdf(p.size());
        double run = 0.0;
        for (std::size_t b = 0; b < p.size(); ++b) {
            run += p[b];
            cdf[b] = run;
        }
        std::vector<long> counts(p.size(), 0);
        Rng rng(derive_seed(seed, si));
        for (long k = 0; k < shots; ++k) {
            const double u = rng.uniform() * run;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            if (it == cdf.end()) {
                --it;
            }
            ++counts[static_cast<std::size_t>(it - cdf.begin())];
        }
        double s1 = 0.0;
        double s2 = 0.0;
        for (std::size_t b = 0; b < p.size(); ++b) {
            const auto c = static_cast<double>(counts[b]);
            s1 += c * v[b];
            s2 += c * v[b] * v[b];
        }
        const auto n = static_cast<double>(shots);
        const double m = s1 / n;
        mean += m;
        if (shots > 1) {
            var += std::max(0.0, (s2 - n * m * m) / (n - 1.0)) / n;
        }
    }
    return {mean, std::sqrt(var), shots};
}

ShotResult sample_expectation(const NoisyCircuit &circuit, const Observable &obs, long shots, std::uint64_t seed) {
    return sample_expectation(evolve(circuit, DensityState::zero(circuit.qubits)), obs, shots, seed);
}

}  // namespace pielab
