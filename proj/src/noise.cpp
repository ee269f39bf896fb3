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

#include "pielab/noise.hpp"

#include <cmath>
#include <sstream>

#include "pielab/error.hpp"

namespace pielab {

namespace {

void check_probability(double p, const char *name) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        std::ostringstream msg;
        msg << name << " = " << p << " is not a probability";
        fail(Errc::InvalidProbability, msg.str());
    }
}

// Pauli-channel probabilities from a diagonal PTM (f_I, f_X, f_Y, f_Z):
// p_P = 1/4 sum_Q f_Q chi(P, Q), chi = +1 when P and Q commute.
std::array<double, 4> probabilities_from_fidelities(const std::array<double, 4> &f) {
    static constexpr int chi[4][4] = {
        {1, 1, 1, 1},
        {1, 1, -1, -1},
        {1, -1, 1, -1},
        {1, -1, -1, 1},
    };
    std::array<double, 4> p{};
    for (int a = 0; a < 4; ++a) {
        double acc = 0.0;
        for (int b = 0; b < 4; ++b) {
            acc += chi[a][b] * f[static_cast<std::size_t>(b)];
        }
        p[static_cast<std::size_t>(a)] = std::max(0.0, acc / 4.0);
    }
    return p;
}

std::vector<ComplexMatrix> single_wire_pauli_kraus(const std::array<double, 4> &p) {
    static constexpr char letters[4] = {'I', 'X', 'Y', 'Z'};
    std::vector<ComplexMatrix> ops;
    for (int k = 0; k < 4; ++k) {
        if (p[static_cast<std::size_t>(k)] > 0.0 || k == 0) {
            ops.push_back(std::sqrt(p[static_cast<std::size_t>(k)]) * pauli_matrix(letters[k]));
        }
    }
    return ops;
}

}  // namespace

void validate(const NoiseSpec &spec) {
    std::visit(
        [](const auto &k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Depolarizing>) {
                check_probability(k.omega, "omega");
            } else if constexpr (std::is_same_v<T, Dephasing>) {
                check_probability(k.p, "p");
            } else if constexpr (std::is_same_v<T, MixedPauli>) {
                check_probability(k.px, "p_x");
                check_probability(k.py, "p_y");
                check_probability(k.pz, "p_z");
                check_probability(k.px + k.py + k.pz, "p_x + p_y + p_z");
            } else {
                for (double r : {k.rx, k.ry, k.rz}) {
                    if (!std::isfinite(r) || r < 0.0) {
                        fail(Errc::InvalidProbability, "Pauli-Lindblad rates must be finite and nonnegative");
                    }
                }
            }
        },
        spec.kind);
}

std::string describe(const NoiseSpec &spec) {
    std::ostringstream os;
    std::visit(
        [&](const auto &k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Depolarizing>) {
                os << "depolarizing(omega=" << k.omega << ")";
            } else if constexpr (std::is_same_v<T, Dephasing>) {
                os << "dephasing(p=" << k.p << ")";
            } else if constexpr (std::is_same_v<T, MixedPauli>) {
                os << "mixed_pauli(" << k.px << "," << k.py << "," << k.pz << ")";
            } else {
                os << "pauli_lindblad(" << k.rx << "," << k.ry << "," << k.rz << ")";
            }
        },
        spec.kind);
    return os.str();
}

std::array<double, 4> pauli_probabilities(const NoiseSpec &spec) {
    validate(spec);
    return std::visit(
        [](const auto &k) -> std::array<double, 4> {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Depolarizing>) {
                return {1.0 - 0.75 * k.omega, k.omega / 4, k.omega / 4, k.omega / 4};
            } else if constexpr (std::is_same_v<T, Dephasing>) {
                return {1.0 - k.p, 0.0, 0.0, k.p};
            } else if constexpr (std::is_same_v<T, MixedPauli>) {
                return {1.0 - k.px - k.py - k.pz, k.px, k.py, k.pz};
            } else {
                const double fx = std::exp(-2.0 * (k.ry + k.rz));
                const double fy = std::exp(-2.0 * (k.rx + k.rz));
                const double fz = std::exp(-2.0 * (k.rx + k.ry));
                return probabilities_from_fidelities({1.0, fx, fy, fz});
            }
        },
        spec.kind);
}

Channel channel_for(const NoiseSpec &spec, int qubits) {
    if (qubits != 1 && qubits != 2) {
        fail(Errc::InvalidParams, "noise channels are defined for 1- and 2-qubit gates");
    }
    validate(spec);
    if (const auto *dep = std::get_if<Depolarizing>(&spec.kind)) {
        // (1 - w) rho + w I/d = (1 - w + w/d^2) rho + (w/d^2) sum_{P != I} P rho P
        const double d2 = qubits == 1 ? 4.0 : 16.0;
        std::vector<ComplexMatrix> ops;
        const auto basis = pauli_basis(qubits);
        ops.push_back(std::sqrt(1.0 - dep->omega + dep->omega / d2) * basis.front().matrix());
        if (dep->omega > 0.0) {
            for (std::size_t k = 1; k < basis.size(); ++k) {
                ops.push_back(std::sqrt(dep->omega / d2) * basis[k].matrix());
            }
        }
        return Channel::kraus(std::move(ops));
    }
    const auto wire = single_wire_pauli_kraus(pauli_probabilities(spec));
    if (qubits == 1) {
        return Channel::kraus(wire);
    }
    std::vector<ComplexMatrix> ops;
    ops.reserve(wire.size() * wire.size());
    for (const auto &hi : wire) {
        for (const auto &lo : wire) {
            ops.push_back(kron(hi, lo));
        }
    }
    return Channel::kraus(std::move(ops));
}

NoiseModel NoiseModel::from_spec(const NoiseSpec &spec) {
    validate(spec);
    NoiseModel nm;
    if (spec.scope != NoiseScope::TwoQubit) {
        nm.one_qubit = spec;
    }
    if (spec.scope != NoiseScope::OneQubit) {
        nm.two_qubit = spec;
    }
    return nm;
}

std::size_t NoisyCircuit::noise_events() const {
    std::size_t n = 0;
    for (const auto &op : ops) {
        n += op.noise ? 1 : 0;
    }
    return n;
}

NoisyCircuit apply_noise_model(const Circuit &c, const NoiseModel &nm) {
    std::shared_ptr<const Channel> one;
    std::shared_ptr<const Channel> two;
    if (nm.one_qubit) {
        one = std::make_shared<const Channel>(channel_for(*nm.one_qubit, 1));
    }
    if (nm.two_qubit) {
        two = std::make_shared<const Channel>(channel_for(*nm.two_qubit, 2));
    }
    NoisyCircuit out;
    out.qubits = c.qubits();
    out.fold_count = c.fold_count();
    out.ops.reserve(c.size());
    for (const Gate &g : c.gates()) {
        out.ops.push_back(NoisyOp{g, g.arity() == 1 ? one : two, std::nullopt});
    }
    return out;
}

}  // namespace pielab
