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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pielab/circuit.hpp"
#include "pielab/linalg.hpp"
#include "pielab/noise.hpp"
#include "pielab/simulator.hpp"

namespace pielab {

class Rng;

enum class FitModel { Pie, Linear, Quadratic, Exponential };

std::string_view model_name(FitModel m);
/// Accepts pie, linear, quadratic, exp and exponential.
FitModel model_from_name(std::string_view name);
std::size_t min_points(FitModel m);

struct DataPoint {
    int lambda = 1;
    double value = 0.0;
    double std = 0.0;
};

/// Values are stored sign-normalized and shifted: stored = sign * (raw - trace_shift).
struct ExtrapolationDataset {
    std::vector<DataPoint> points;
    int observable_sign = 1;
    double trace_shift = 0.0;

    /// Normalizes raw measurements. The sign is taken from the lowest noise level.
    static ExtrapolationDataset from_raw(std::vector<DataPoint> raw, double trace_shift = 0.0);

    /// Odd, strictly increasing lambdas; finite values; nonnegative std; enough points.
    void validate(std::size_t min_count) const;
};

struct FitOptions {
    bool weighted = true;
};

struct FitResult {
    FitModel model = FitModel::Pie;
    std::vector<double> params;
    RealMatrix covariance;
    double mitigated = 0.0;
    double mitigated_variance = 0.0;
    std::optional<double> s_estimate;
    int clamped = 0;  // points raised to the log floor (PIE only)
};

inline constexpr double kLogFloor = 1e-6;

/// Linear least squares. With `sigma` empty the fit is unweighted and the
/// covariance is scaled by the residual variance (zero when no dof remain);
/// otherwise weights are 1/sigma^2 and the covariance is absolute.
struct LeastSquares {
    RealVector coef;
    RealMatrix covariance;
    double rss = 0.0;
};
LeastSquares least_squares(const RealMatrix &design, const RealVector &y, const RealVector &sigma);

FitResult fit_pie(const ExtrapolationDataset &d, const FitOptions &opt = {});
FitResult fit_linear(const ExtrapolationDataset &d, const FitOptions &opt = {});
FitResult fit_quadratic(const ExtrapolationDataset &d, const FitOptions &opt = {});
FitResult fit_exponential(const ExtrapolationDataset &d, const FitOptions &opt = {});
FitResult fit(FitModel m, const ExtrapolationDataset &d, const FitOptions &opt = {});

struct CollectOptions {
    std::vector<int> folds{0, 1, 2, 3};
    /// Shots per measurement setting. In exact mode 0 gives std = 0.
    long shots = 4096;
    bool exact = false;
    std::uint64_t seed = 0;
};

/// Raw (unnormalized) measurements, one per fold, in increasing lambda.
std::vector<DataPoint> measure_folds(const Circuit &base, const NoiseModel &nm, const Observable &obs,
                                     const CollectOptions &opt);

ExtrapolationDataset collect(const Circuit &base, const NoiseModel &nm, const Observable &obs,
                             const CollectOptions &opt);

/// Noise-free expectation of `obs` after `c` on |0...0>.
double ideal_expectation(const Circuit &c, const Observable &obs);

/// Nearest multiple of pi/2, ties toward zero.
double snap_angle(double angle);

/// Snaps round((1 - f) * M) of the M non-Clifford rotation angles, chosen at random.
Circuit near_clifford_circuit(const Circuit &target, double non_clifford_fraction, Rng &rng);

struct CdrOptions {
    int training_count = 20;
    double non_clifford_fraction = 0.5;
    long shots = 4096;
    bool exact = false;
    std::uint64_t seed = 0;
};

struct CdrResult {
    double mitigated = 0.0;
    double std_error = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double noisy_target = 0.0;
    std::vector<std::pair<double, double>> training;  // (noisy, ideal)
};

CdrResult cdr_mitigate(const Circuit &target, const NoiseModel &nm, const Observable &obs, const CdrOptions &opt);

}  // namespace pielab
