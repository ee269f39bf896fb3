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
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "pielab/circuit.hpp"
#include "pielab/linalg.hpp"
#include "pielab/noise.hpp"
#include "pielab/simulator.hpp"

namespace pielab {

/// PTM of the noisy gate (gate followed by its noise channel).
RealMatrix estimate_gate_ptm(const Gate &gate, const NoiseModel &nm);

/// Monte-Carlo estimate: every input Pauli is expanded into product Pauli
/// eigenstates and every output Pauli is measured with `shots` shots.
RealMatrix estimate_gate_ptm(const Gate &gate, const NoiseModel &nm, long shots, std::uint64_t seed);

/// R_G * R_err^{-1}; SingularPtm when R_err has condition number >= 1e8.
RealMatrix inverse_noise_ptm(const RealMatrix &ideal, const RealMatrix &erroneous);

struct Qpd {
    std::vector<std::string> paulis;
    std::vector<double> coeffs;
    double gamma = 1.0;
    double s_pos = 1.0;
    std::vector<double> pos_probs;
    double residual = 0.0;

    /// Fills gamma, s_pos and pos_probs from the coefficients.
    static Qpd from_coeffs(std::vector<std::string> paulis, std::vector<double> coeffs, double residual = 0.0);
};

/// Equality-constrained least squares of `target` over the Pauli-channel PTMs
/// of the given width. PoorFit when the Frobenius residual exceeds `max_residual`.
Qpd solve_qpd(const RealMatrix &target, double max_residual = 1e-6);

/// QPDs keyed by gate name and angle.
class QpdTable {
  public:
    static std::string key(const Gate &g);

    void insert(const Gate &g, Qpd q) { table_[key(g)] = std::move(q); }
    bool contains(const Gate &g) const { return table_.count(key(g)) != 0; }
    /// MissingQpd when absent.
    const Qpd &at(const Gate &g) const;
    const std::map<std::string, Qpd> &entries() const { return table_; }

  private:
    std::map<std::string, Qpd> table_;
};

struct QpdBuildOptions {
    bool exact = true;
    long shots = 4096;
    std::uint64_t seed = 0;
    double max_residual = 1e-6;
};

/// One QPD per distinct noisy gate of `c`, from estimated PTMs.
QpdTable build_qpd_table(const Circuit &c, const NoiseModel &nm, const QpdBuildOptions &opt = {});

enum class EstimatorMode { Pec, Emre, Hemre };

std::string_view estimator_name(EstimatorMode m);
EstimatorMode estimator_from_name(std::string_view name);

struct EstimatorOptions {
    EstimatorMode mode = EstimatorMode::Pec;
    int samples = 1200;
    /// Shots per measurement setting for each sampled circuit; ignored when exact.
    long shots = 4096;
    bool exact = false;
    std::uint64_t seed = 0;
};

/// Per-sample values are for the traceless part of the observable; its
/// identity component is added to `mean` exactly.
struct SamplingEstimate {
    std::vector<double> per_sample_values;
    double raw_mean = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    double robustness_product = 1.0;
};

/// Sampling distribution used at one gate site: probabilities, sign per entry
/// and the site's robustness factor.
struct SiteDistribution {
    std::vector<std::string> paulis;
    std::vector<double> probs;
    std::vector<int> signs;
    double robustness = 1.0;
};

SiteDistribution site_distribution(const Qpd &q, EstimatorMode mode, int arity);

SamplingEstimate run_estimator(const Circuit &base, const NoiseModel &nm, const Observable &obs,
                               const QpdTable &table, const EstimatorOptions &opt);

}  // namespace pielab
