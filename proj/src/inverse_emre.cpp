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

#include "pielab/inverse_emre.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pielab/error.hpp"
#include "pielab/rng.hpp"

namespace pielab {

namespace {

Channel noisy_gate_channel(const Gate &gate, const NoiseModel &nm) {
    const Channel u = Channel::unitary(gate.matrix());
    const auto &spec = nm.for_arity(gate.arity());
    if (!spec) {
        return u;
    }
    return compose(channel_for(*spec, gate.arity()), u);
}

// Pauli eigenstate projector |s><s| for letter L with eigenvalue sign (+1/-1).
ComplexMatrix eigen_projector(char letter, int sign) {
    ComplexVector v(2);
    const double r = 1.0 / std::sqrt(2.0);
    switch (letter) {
    case 'X':
        v << r, sign * r;
        break;
    case 'Y':
        v << r, cplx(0.0, sign * r);
        break;
    default:
        v << (sign > 0 ? 1.0 : 0.0), (sign > 0 ? 0.0 : 1.0);
        break;
    }
    return v * v.adjoint();
}

}  // namespace

RealMatrix estimate_gate_ptm(const Gate &gate, const NoiseModel &nm) {
    return ptm_of(noisy_gate_channel(gate, nm));
}

RealMatrix estimate_gate_ptm(const Gate &gate, const NoiseModel &nm, long shots, std::uint64_t seed) {
    if (shots < 1) {
        fail(Errc::InvalidParams, "shots must be at least 1");
    }
    const Channel ch = noisy_gate_channel(gate, nm);
    const int n = gate.arity();
    const auto basis = pauli_basis(n);
    const auto d = static_cast<double>(1 << n);
    const int terms = 1 << n;
    RealMatrix r = RealMatrix::Zero(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (int k = 0; k < terms; ++k) {
            // Product eigenstate: bit q of k picks the -1 eigenvector on local qubit q.
            ComplexMatrix rho = ComplexMatrix::Ones(1, 1);
            double coeff = 1.0;
            for (int q = n - 1; q >= 0; --q) {
                const char l = basis[j].letter_on(q);
                const int sign = ((k >> q) & 1) ? -1 : 1;
                if (l != 'I') {
                    coeff *= sign;
                }
                rho = kron(rho, eigen_projector(l == 'I' ? 'Z' : l, sign));
            }
            const ComplexMatrix out = apply_channel(ch, rho);
            Rng rng(derive_seed(seed, j * static_cast<std::size_t>(terms) + static_cast<std::size_t>(k)));
            for (std::size_t i = 0; i < basis.size(); ++i) {
                double e = pauli_trace(basis[i], out).real();
                if (!basis[i].is_identity()) {
                    const double p_plus = std::clamp(0.5 * (1.0 + e), 0.0, 1.0);
                    long plus = 0;
                    for (long s = 0; s < shots; ++s) {
                        plus += rng.uniform() < p_plus ? 1 : 0;
                    }
                    e = 2.0 * static_cast<double>(plus) / static_cast<double>(shots) - 1.0;
                }
                r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += coeff * e / d;
            }
        }
    }
    return r;
}

RealMatrix inverse_noise_ptm(const RealMatrix &ideal, const RealMatrix &erroneous) {
    if (ideal.rows() != erroneous.rows() || ideal.cols() != erroneous.cols() || ideal.rows() != ideal.cols()) {
        fail(Errc::DimensionMismatch, "PTMs differ in size");
    }
    Eigen::JacobiSVD<RealMatrix> svd(erroneous);
    const auto &sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0.0) || sv(0) / smin >= 1e8) {
        fail(Errc::SingularPtm, "erroneous PTM is singular or ill-conditioned");
    }
    return ideal * erroneous.inverse();
}

Qpd Qpd::from_coeffs(std::vector<std::string> paulis, std::vector<double> coeffs, double residual) {
    if (paulis.size() != coeffs.size() || coeffs.empty()) {
        fail(Errc::InvalidParams, "QPD needs one coefficient per Pauli");
    }
    Qpd q;
    q.paulis = std::move(paulis);
    q.coeffs = std::move(coeffs);
    q.residual = residual;
    q.gamma = 0.0;
    q.s_pos = 0.0;
    double total = 0.0;
    for (double c : q.coeffs) {
        if (!std::isfinite(c)) {
            fail(Errc::InvalidParams, "QPD coefficients must be finite");
        }
        total += c;
        q.gamma += std::abs(c);
        q.s_pos += std::max(c, 0.0);
    }
    if (std::abs(total - 1.0) > 1e-8) {
        fail(Errc::InvalidParams, "QPD coefficients must sum to 1");
    }
    for (double c : q.coeffs) {
        q.pos_probs.push_back(std::max(c, 0.0) / q.s_pos);
    }
    return q;
}

Qpd solve_qpd(const RealMatrix &target, double max_residual) {
    const Eigen::Index m = target.rows();
    int n = 0;
    while ((Eigen::Index{1} << (2 * n)) < m) {
        ++n;
    }
    if (target.cols() != m || (Eigen::Index{1} << (2 * n)) != m || n < 1 || n > 2) {
        fail(Errc::DimensionMismatch, "QPD targets are 4x4 or 16x16 PTMs");
    }
    const auto basis = pauli_basis(n);
    std::vector<RealMatrix> ptms;
    for (const auto &p : basis) {
        ptms.push_back(ptm_of(Channel::unitary(p.matrix())));
    }
    // KKT system for min ||sum q_i B_i - T||_F^2 subject to sum q_i = 1.
    const auto k = static_cast<Eigen::Index>(basis.size());
    RealMatrix kkt = RealMatrix::Zero(k + 1, k + 1);
    RealVector rhs = RealVector::Zero(k + 1);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            kkt(i, j) = 2.0 * ptms[static_cast<std::size_t>(i)].cwiseProduct(ptms[static_cast<std::size_t>(j)]).sum();
        }
        kkt(i, k) = 1.0;
        kkt(k, i) = 1.0;
        rhs(i) = 2.0 * ptms[static_cast<std::size_t>(i)].cwiseProduct(target).sum();
    }
    rhs(k) = 1.0;
    const RealVector sol = kkt.fullPivLu().solve(rhs);
    RealMatrix fit = RealMatrix::Zero(m, m);
    std::vector<double> coeffs;
    std::vector<std::string> names;
    for (Eigen::Index i = 0; i < k; ++i) {
        coeffs.push_back(sol(i));
        names.push_back(basis[static_cast<std::size_t>(i)].letters());
        fit += sol(i) * ptms[static_cast<std::size_t>(i)];
    }
    const double residual = (fit - target).norm();
    if (!(residual <= max_residual)) {
        fail(Errc::PoorFit, "QPD residual " + std::to_string(residual) + " exceeds tolerance");
    }
    return Qpd::from_coeffs(std::move(names), std::move(coeffs), residual);
}

std::string QpdTable::key(const Gate &g) {
    std::string k(gate_name(g.kind));
    if (gate_has_angle(g.kind)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "(%.17g)", g.angle);
        k += buf;
    }
    return k;
}

const Qpd &QpdTable::at(const Gate &g) const {
    const auto it = table_.find(key(g));
    if (it == table_.end()) {
        fail(Errc::MissingQpd, "no QPD for gate " + key(g));
    }
    return it->second;
}

QpdTable build_qpd_table(const Circuit &c, const NoiseModel &nm, const QpdBuildOptions &opt) {
    QpdTable table;
    std::uint64_t index = 0;
    for (const Gate &g : c.gates()) {
        if (!nm.for_arity(g.arity()) || table.contains(g)) {
            continue;
        }
        const RealMatrix ideal = ptm_of(Channel::unitary(g.matrix()));
        const RealMatrix err =
            opt.exact ? estimate_gate_ptm(g, nm) : estimate_gate_ptm(g, nm, opt.shots, derive_seed(opt.seed, index));
        ++index;
        table.insert(g, solve_qpd(inverse_noise_ptm(ideal, err), opt.max_residual));
    }
    return table;
}

std::string_view estimator_name(EstimatorMode m) {
    switch (m) {
    case EstimatorMode::Pec:
        return "pec";
    case EstimatorMode::Emre:
        return "emre";
    case EstimatorMode::Hemre:
        return "hemre";
    }
    return "?";
}

EstimatorMode estimator_from_name(std::string_view name) {
    if (name == "pec") {
        return EstimatorMode::Pec;
    }
    if (name == "emre") {
        return EstimatorMode::Emre;
    }
    if (name == "hemre") {
        return EstimatorMode::Hemre;
    }
    fail(Errc::ConfigError, "unknown estimator '" + std::string(name) + "'");
}

SiteDistribution site_distribution(const Qpd &q, EstimatorMode mode, int arity) {
    const bool positive = mode == EstimatorMode::Emre || (mode == EstimatorMode::Hemre && arity == 1);
    SiteDistribution s;
    s.paulis = q.paulis;
    if (positive) {
        s.probs = q.pos_probs;
        s.signs.assign(q.coeffs.size(), 1);
        s.robustness = q.s_pos;
    } else {
        for (double c : q.coeffs) {
            s.probs.push_back(std::abs(c) / q.gamma);
            s.signs.push_back(c < 0.0 ? -1 : 1);
        }
        s.robustness = q.gamma;
    }
    return s;
}

SamplingEstimate run_estimator(const Circuit &base, const NoiseModel &nm, const Observable &obs,
                               const QpdTable &table, const EstimatorOptions &opt) {
    if (opt.samples < 1) {
        fail(Errc::InvalidParams, "sample count must be at least 1");
    }
    if (!opt.exact && opt.shots < 1) {
        fail(Errc::InvalidParams, "shots must be at least 1");
    }
    if (base.qubits() != obs.qubits()) {
        fail(Errc::WidthMismatch, "observable and circuit widths differ");
    }
    const NoisyCircuit noisy = apply_noise_model(base, nm);
    std::map<std::string, SiteDistribution> dists;
    std::vector<const SiteDistribution *> sites(noisy.ops.size(), nullptr);
    double robustness = 1.0;
    for (std::size_t i = 0; i < noisy.ops.size(); ++i) {
        const Gate &g = noisy.ops[i].gate;
        if (!noisy.ops[i].noise) {
            continue;
        }
        auto [it, inserted] = dists.try_emplace(QpdTable::key(g));
        if (inserted) {
            it->second = site_distribution(table.at(g), opt.mode, g.arity());
        }
        sites[i] = &it->second;
        robustness *= it->second.robustness;
    }
    const Observable traceless = obs.traceless_part();
    const auto k_count = static_cast<std::size_t>(opt.samples);
    std::vector<double> values(k_count);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(k_count); ++k) {
        Rng rng(derive_seed(opt.seed, static_cast<std::uint64_t>(k)));
        NoisyCircuit sampled = noisy;
        int sign = 1;
        for (std::size_t i = 0; i < sites.size(); ++i) {
            if (!sites[i]) {
                continue;
            }
            const SiteDistribution &s = *sites[i];
            const double u = rng.uniform();
            std::size_t pick = 0;
            double acc = s.probs[0];
            while (u >= acc && pick + 1 < s.probs.size()) {
                acc += s.probs[++pick];
            }
            // Skip zero-weight entries reached only through rounding.
            while (s.probs[pick] <= 0.0 && pick > 0) {
                --pick;
            }
            sign *= s.signs[pick];
            const PauliString p(s.paulis[pick]);
            if (!p.is_identity()) {
                sampled.ops[i].frame = p;
            }
        }
        const DensityState st = evolve(sampled, DensityState::zero(base.qubits()));
        const double v =
            opt.exact ? expectation(st, traceless) : sample_expectation(st, traceless, opt.shots, rng.next()).mean;
        values[static_cast<std::size_t>(k)] = sign * v;
    }

    SamplingEstimate est;
    est.robustness_product = robustness;
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    est.raw_mean = sum / static_cast<double>(k_count);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - est.raw_mean) * (v - est.raw_mean);
    }
    const double sd = k_count > 1 ? std::sqrt(ss / static_cast<double>(k_count - 1)) : 0.0;
    est.per_sample_values = std::move(values);
    est.mean = robustness * est.raw_mean + obs.identity_component();
    est.std_error = robustness * sd / std::sqrt(static_cast<double>(k_count));
    return est;
}

}  // namespace pielab
