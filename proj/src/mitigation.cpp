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

#include "pielab/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "pielab/error.hpp"
#include "pielab/rng.hpp"

namespace pielab {

std::string_view model_name(FitModel m) {
    switch (m) {
    case FitModel::Pie:
        return "pie";
    case FitModel::Linear:
        return "linear";
    case FitModel::Quadratic:
        return "quadratic";
    case FitModel::Exponential:
        return "exp";
    }
    return "?";
}

FitModel model_from_name(std::string_view name) {
    if (name == "pie") {
        return FitModel::Pie;
    }
    if (name == "linear") {
        return FitModel::Linear;
    }
    if (name == "quadratic") {
        return FitModel::Quadratic;
    }
    if (name == "exp" || name == "exponential") {
        return FitModel::Exponential;
    }
    fail(Errc::ConfigError, "unknown fit model '" + std::string(name) + "'");
}

std::size_t min_points(FitModel m) { return (m == FitModel::Pie || m == FitModel::Linear) ? 2 : 3; }

ExtrapolationDataset ExtrapolationDataset::from_raw(std::vector<DataPoint> raw, double trace_shift) {
    ExtrapolationDataset d;
    d.trace_shift = trace_shift;
    if (raw.empty()) {
        return d;
    }
    std::sort(raw.begin(), raw.end(), [](const DataPoint &a, const DataPoint &b) { return a.lambda < b.lambda; });
    d.observable_sign = raw.front().value - trace_shift < 0.0 ? -1 : 1;
    for (auto &p : raw) {
        p.value = d.observable_sign * (p.value - trace_shift);
    }
    d.points = std::move(raw);
    return d;
}

void ExtrapolationDataset::validate(std::size_t min_count) const {
    if (points.size() < min_count) {
        fail(Errc::DegenerateDesign, "need at least " + std::to_string(min_count) + " points, got " +
                                         std::to_string(points.size()));
    }
    if (observable_sign != 1 && observable_sign != -1) {
        fail(Errc::InvalidParams, "observable sign must be +1 or -1");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto &p = points[i];
        if (p.lambda < 1 || p.lambda % 2 == 0) {
            fail(Errc::InvalidParams, "noise level " + std::to_string(p.lambda) + " is not an odd positive integer");
        }
        if (i > 0 && p.lambda <= points[i - 1].lambda) {
            fail(Errc::DegenerateDesign, "noise levels must be strictly increasing");
        }
        if (!std::isfinite(p.value) || !std::isfinite(p.std) || p.std < 0.0) {
            fail(Errc::InvalidParams, "values must be finite and std nonnegative");
        }
    }
    if (!std::isfinite(trace_shift)) {
        fail(Errc::InvalidParams, "trace shift must be finite");
    }
}

LeastSquares least_squares(const RealMatrix &design, const RealVector &y, const RealVector &sigma) {
    const Eigen::Index n = design.rows();
    const Eigen::Index p = design.cols();
    const bool weighted = sigma.size() > 0;
    RealMatrix xw = design;
    RealVector yw = y;
    if (weighted) {
        for (Eigen::Index i = 0; i < n; ++i) {
            xw.row(i) /= sigma(i);
            yw(i) /= sigma(i);
        }
    }
    Eigen::ColPivHouseholderQR<RealMatrix> qr(xw);
    qr.setThreshold(1e-12);
    if (qr.rank() < p) {
        fail(Errc::DegenerateDesign, "design matrix is rank deficient");
    }
    LeastSquares out;
    out.coef = qr.solve(yw);
    out.rss = (xw * out.coef - yw).squaredNorm();
    const RealMatrix inv = (xw.transpose() * xw).inverse();
    out.covariance = 0.5 * (inv + inv.transpose());
    if (!weighted) {
        out.covariance *= n > p ? out.rss / static_cast<double>(n - p) : 0.0;
    }
    return out;
}

namespace {

bool use_weights(const ExtrapolationDataset &d, const FitOptions &opt) {
    return opt.weighted && std::all_of(d.points.begin(), d.points.end(), [](const DataPoint &p) { return p.std > 0.0; });
}

LeastSquares polyfit(const ExtrapolationDataset &d, int degree, const FitOptions &opt) {
    const auto n = static_cast<Eigen::Index>(d.points.size());
    RealMatrix x(n, degree + 1);
    RealVector y(n);
    RealVector sigma(use_weights(d, opt) ? n : 0);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto &p = d.points[static_cast<std::size_t>(i)];
        for (int k = 0; k <= degree; ++k) {
            x(i, k) = std::pow(static_cast<double>(p.lambda), k);
        }
        y(i) = p.value;
        if (sigma.size() > 0) {
            sigma(i) = p.std;
        }
    }
    return least_squares(x, y, sigma);
}

FitResult polynomial(FitModel model, int degree, const ExtrapolationDataset &d, const FitOptions &opt) {
    d.validate(min_points(model));
    const LeastSquares ls = polyfit(d, degree, opt);
    FitResult r;
    r.model = model;
    r.params.assign(ls.coef.data(), ls.coef.data() + ls.coef.size());
    r.covariance = ls.covariance;
    r.mitigated = d.observable_sign * ls.coef(0) + d.trace_shift;
    r.mitigated_variance = std::max(0.0, ls.covariance(0, 0));
    return r;
}

double weighted_cost(const RealVector &r) { return r.squaredNorm(); }

}  // namespace

FitResult fit_pie(const ExtrapolationDataset &d, const FitOptions &opt) {
    d.validate(min_points(FitModel::Pie));
    const auto n = static_cast<Eigen::Index>(d.points.size());
    RealMatrix x(n, 2);
    RealVector y(n);
    const bool weighted = use_weights(d, opt);
    RealVector sigma(weighted ? n : 0);
    FitResult r;
    r.model = FitModel::Pie;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto &p = d.points[static_cast<std::size_t>(i)];
        double v = p.value;
        if (v <= 0.0) {
            v = kLogFloor;
            ++r.clamped;
        }
        x(i, 0) = 1.0;
        x(i, 1) = p.lambda;
        y(i) = std::log(v);
        if (weighted) {
            sigma(i) = p.std / v;
        }
    }
    const LeastSquares ls = least_squares(x, y, sigma);
    const double c0 = ls.coef(0);
    const double c1 = ls.coef(1);
    r.params = {c0, c1};
    r.covariance = ls.covariance;
    r.mitigated = d.observable_sign * std::exp(c0) + d.trace_shift;
    r.mitigated_variance = std::exp(2.0 * c0) * std::max(0.0, ls.covariance(0, 0));
    r.s_estimate = std::exp(-c1);
    return r;
}

FitResult fit_linear(const ExtrapolationDataset &d, const FitOptions &opt) {
    return polynomial(FitModel::Linear, 1, d, opt);
}

FitResult fit_quadratic(const ExtrapolationDataset &d, const FitOptions &opt) {
    return polynomial(FitModel::Quadratic, 2, d, opt);
}

FitResult fit_exponential(const ExtrapolationDataset &d, const FitOptions &opt) {
    d.validate(min_points(FitModel::Exponential));
    const auto n = static_cast<Eigen::Index>(d.points.size());
    const bool weighted = use_weights(d, opt);
    RealVector lam(n);
    RealVector y(n);
    RealVector w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto &p = d.points[static_cast<std::size_t>(i)];
        lam(i) = p.lambda;
        y(i) = p.value;
        w(i) = weighted ? 1.0 / p.std : 1.0;
    }
    auto residual = [&](const RealVector &x) {
        RealVector r(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            r(i) = w(i) * (y(i) - x(0) - x(1) * std::exp(-x(2) * lam(i)));
        }
        return r;
    };
    auto jacobian = [&](const RealVector &x) {
        RealMatrix j(n, 3);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double e = std::exp(-x(2) * lam(i));
            j(i, 0) = w(i);
            j(i, 1) = w(i) * e;
            j(i, 2) = -w(i) * x(1) * lam(i) * e;
        }
        return j;
    };

    const FitResult pie = fit_pie(d, opt);
    RealVector x(3);
    x << 0.0, std::exp(pie.params[0]), -pie.params[1];

    RealVector r = residual(x);
    double cost = weighted_cost(r);
    double mu = -1.0;
    bool converged = false;
    for (int it = 0; it < 200 && !converged; ++it) {
        const RealMatrix j = jacobian(x);
        const RealMatrix a = j.transpose() * j;
        const RealVector g = j.transpose() * r;
        if (mu < 0.0) {
            mu = 1e-3 * std::max(a.diagonal().maxCoeff(), 1e-300);
        }
        for (int attempt = 0; attempt < 60; ++attempt) {
            const RealMatrix damped = a + mu * RealMatrix::Identity(3, 3);
            const RealVector step = damped.ldlt().solve(g);
            if (!step.allFinite()) {
                mu *= 4.0;
                continue;
            }
            const RealVector trial = x + step;
            const RealVector rt = residual(trial);
            const double ct = weighted_cost(rt);
            const bool tiny = step.lpNorm<Eigen::Infinity>() < 1e-10;
            if (std::isfinite(ct) && ct <= cost) {
                x = trial;
                r = rt;
                cost = ct;
                mu = std::max(mu / 3.0, 1e-300);
                converged = tiny;
                break;
            }
            if (tiny) {
                converged = true;
                break;
            }
            mu *= 2.0;
        }
    }
    if (!converged || !x.allFinite()) {
        fail(Errc::NoConvergence, "exponential fit did not converge in 200 iterations");
    }
    const RealMatrix j = jacobian(x);
    const RealMatrix a = j.transpose() * j;
    Eigen::FullPivLU<RealMatrix> lu(a);
    if (!lu.isInvertible() || 1.0 / lu.rcond() >= 1e14) {
        fail(Errc::NoConvergence, "exponential fit is ill-conditioned at the solution");
    }
    RealMatrix cov = lu.inverse();
    cov = 0.5 * (cov + cov.transpose()).eval();
    if (!weighted) {
        cov *= n > 3 ? cost / static_cast<double>(n - 3) : 0.0;
    }
    if (!cov.allFinite()) {
        fail(Errc::NoConvergence, "exponential fit covariance is not finite");
    }
    FitResult out;
    out.model = FitModel::Exponential;
    out.params = {x(0), x(1), x(2)};
    out.covariance = cov;
    out.mitigated = d.observable_sign * (x(0) + x(1)) + d.trace_shift;
    out.mitigated_variance = std::max(0.0, cov(0, 0) + cov(1, 1) + 2.0 * cov(0, 1));
    return out;
}

FitResult fit(FitModel m, const ExtrapolationDataset &d, const FitOptions &opt) {
    switch (m) {
    case FitModel::Pie:
        return fit_pie(d, opt);
    case FitModel::Linear:
        return fit_linear(d, opt);
    case FitModel::Quadratic:
        return fit_quadratic(d, opt);
    case FitModel::Exponential:
        return fit_exponential(d, opt);
    }
    fail(Errc::InvalidParams, "unknown fit model");
}

std::vector<DataPoint> measure_folds(const Circuit &base, const NoiseModel &nm, const Observable &obs,
                                     const CollectOptions &opt) {
    if (opt.folds.empty()) {
        fail(Errc::InvalidParams, "fold list is empty");
    }
    if (base.qubits() != obs.qubits()) {
        fail(Errc::WidthMismatch, "observable and circuit widths differ");
    }
    std::vector<int> folds = opt.folds;
    std::sort(folds.begin(), folds.end());
    if (folds.front() < 0 || std::adjacent_find(folds.begin(), folds.end()) != folds.end()) {
        fail(Errc::InvalidParams, "folds must be distinct and nonnegative");
    }
    if (!opt.exact && opt.shots < 1) {
        fail(Errc::InvalidParams, "shots must be at least 1");
    }
    const NoisyCircuit noisy = apply_noise_model(fold(base, folds.back()), nm);
    std::vector<std::size_t> cuts;
    for (int f : folds) {
        cuts.push_back(static_cast<std::size_t>(2 * f + 1) * base.size());
    }
    std::vector<DataPoint> out(folds.size());
    evolve_checkpoints(noisy, DensityState::zero(base.qubits()), cuts, [&](std::size_t i, const DensityState &st) {
        DataPoint p;
        p.lambda = 2 * folds[i] + 1;
        if (opt.exact) {
            p.value = expectation(st, obs);
            p.std = opt.shots > 0 ? shot_statistics(st, obs, opt.shots).std_error : 0.0;
        } else {
            const ShotResult s = sample_expectation(st, obs, opt.shots, derive_seed(opt.seed, static_cast<std::uint64_t>(folds[i])));
            p.value = s.mean;
            p.std = s.std_error;
        }
        out[i] = p;
    });
    return out;
}

ExtrapolationDataset collect(const Circuit &base, const NoiseModel &nm, const Observable &obs,
                             const CollectOptions &opt) {
    return ExtrapolationDataset::from_raw(measure_folds(base, nm, obs, opt), obs.identity_component());
}

double ideal_expectation(const Circuit &c, const Observable &obs) {
    const NoisyCircuit nc = apply_noise_model(c, NoiseModel::noiseless());
    return expectation(evolve(nc, DensityState::zero(c.qubits())), obs);
}

double snap_angle(double angle) {
    const double q = angle / (std::numbers::pi / 2.0);
    double k = std::round(q);
    if (std::abs(std::abs(q - std::trunc(q)) - 0.5) < 1e-12) {
        k = std::trunc(q);
    }
    return k * (std::numbers::pi / 2.0);
}

namespace {

bool is_clifford_angle(double angle) { return std::abs(angle - snap_angle(angle)) < 1e-12; }

}  // namespace

Circuit near_clifford_circuit(const Circuit &target, double non_clifford_fraction, Rng &rng) {
    if (!(non_clifford_fraction >= 0.0 && non_clifford_fraction <= 1.0)) {
        fail(Errc::InvalidParams, "non-Clifford fraction must lie in [0, 1]");
    }
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < target.gates().size(); ++i) {
        const Gate &g = target.gates()[i];
        if (gate_has_angle(g.kind) && !is_clifford_angle(g.angle)) {
            candidates.push_back(i);
        }
    }
    const auto snap_count =
        static_cast<std::size_t>(std::llround((1.0 - non_clifford_fraction) * static_cast<double>(candidates.size())));
    for (std::size_t k = 0; k < snap_count; ++k) {
        const std::size_t j = k + static_cast<std::size_t>(rng.below(candidates.size() - k));
        std::swap(candidates[k], candidates[j]);
    }
    std::vector<bool> snap(target.gates().size(), false);
    for (std::size_t k = 0; k < snap_count; ++k) {
        snap[candidates[k]] = true;
    }
    Circuit out(target.qubits());
    for (std::size_t i = 0; i < target.gates().size(); ++i) {
        Gate g = target.gates()[i];
        if (snap[i]) {
            g.angle = snap_angle(g.angle);
        }
        out.add(g);
    }
    return out;
}

namespace {

ShotResult noisy_value(const Circuit &c, const NoiseModel &nm, const Observable &obs, long shots, bool exact,
                       std::uint64_t seed) {
    const DensityState st = evolve(apply_noise_model(c, nm), DensityState::zero(c.qubits()));
    if (exact) {
        return {expectation(st, obs), shots > 0 ? shot_statistics(st, obs, shots).std_error : 0.0,
                std::max(shots, 1L)};
    }
    return sample_expectation(st, obs, shots, seed);
}

}  // namespace

CdrResult cdr_mitigate(const Circuit &target, const NoiseModel &nm, const Observable &obs, const CdrOptions &opt) {
    if (opt.training_count < 2) {
        fail(Errc::InsufficientTraining, "CDR needs at least 2 training circuits");
    }
    if (!opt.exact && opt.shots < 1) {
        fail(Errc::InvalidParams, "shots must be at least 1");
    }
    const auto m = static_cast<std::size_t>(opt.training_count);
    std::vector<std::pair<double, double>> pairs(m);
    std::vector<Circuit> circuits;
    circuits.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        Rng rng(derive_seed(opt.seed, 2 * k + 1));
        circuits.push_back(near_clifford_circuit(target, opt.non_clifford_fraction, rng));
    }
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(m); ++k) {
        const auto uk = static_cast<std::size_t>(k);
        const ShotResult noisy =
            noisy_value(circuits[uk], nm, obs, opt.shots, opt.exact, derive_seed(opt.seed, 2 * uk + 2));
        pairs[uk] = {noisy.mean, ideal_expectation(circuits[uk], obs)};
    }
    const ShotResult target_noisy = noisy_value(target, nm, obs, opt.shots, opt.exact, derive_seed(opt.seed, 0));

    const auto nd = static_cast<double>(m);
    double mx = 0.0;
    double my = 0.0;
    for (const auto &[x, y] : pairs) {
        mx += x;
        my += y;
    }
    mx /= nd;
    my /= nd;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto &[x, y] : pairs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    CdrResult out;
    out.training = pairs;
    out.noisy_target = target_noisy.mean;
    double var = 0.0;
    if (sxx <= 1e-14 * std::max(1.0, syy)) {
        out.slope = 0.0;
        out.intercept = my;
        var = syy / (nd - 1.0) / nd;
    } else {
        out.slope = sxy / sxx;
        out.intercept = my - out.slope * mx;
        double rss = 0.0;
        for (const auto &[x, y] : pairs) {
            const double e = y - out.intercept - out.slope * x;
            rss += e * e;
        }
        const double s2 = m > 2 ? rss / (nd - 2.0) : 0.0;
        const double dx = target_noisy.mean - mx;
        var = s2 * (1.0 / nd + dx * dx / sxx) + out.slope * out.slope * target_noisy.std_error * target_noisy.std_error;
    }
    out.mitigated = out.slope * target_noisy.mean + out.intercept;
    out.std_error = std::sqrt(std::max(0.0, var));
    return out;
}

}  // namespace pielab
