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

#include "pielab/circuit.hpp"

#include <cmath>

#include "pielab/error.hpp"

namespace pielab {

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::RXX: return "RXX";
        case GateKind::RZZ: return "RZZ";
        case GateKind::CNOT: return "CNOT";
    }
    return "?";
}

GateKind gate_kind_from_name(std::string_view name) {
    for (GateKind k : {GateKind::H, GateKind::X, GateKind::Y, GateKind::RX, GateKind::RY, GateKind::RZ,
                       GateKind::RXX, GateKind::RZZ, GateKind::CNOT}) {
        if (gate_name(k) == name) {
            return k;
        }
    }
    if (name == "CX") {
        return GateKind::CNOT;
    }
    fail(Errc::ParseError, "unknown gate name '" + std::string(name) + "'");
}

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::RXX:
        case GateKind::RZZ:
        case GateKind::CNOT: return 2;
        default: return 1;
    }
}

bool gate_has_angle(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::RXX:
        case GateKind::RZZ: return true;
        default: return false;
    }
}

Gate Gate::one(GateKind kind, int q, double angle) {
    if (gate_arity(kind) != 1) {
        fail(Errc::InvalidParams, std::string(gate_name(kind)) + " is not a one-qubit gate");
    }
    return Gate{kind, {q, -1}, gate_has_angle(kind) ? angle : 0.0};
}

Gate Gate::two(GateKind kind, int q0, int q1, double angle) {
    if (gate_arity(kind) != 2) {
        fail(Errc::InvalidParams, std::string(gate_name(kind)) + " is not a two-qubit gate");
    }
    return Gate{kind, {q0, q1}, gate_has_angle(kind) ? angle : 0.0};
}

ComplexMatrix Gate::matrix() const {
    const cplx i(0.0, 1.0);
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    ComplexMatrix m;
    switch (kind) {
        case GateKind::H:
            m.resize(2, 2);
            m << 1, 1, 1, -1;
            m /= std::sqrt(2.0);
            return m;
        case GateKind::X:
            m.resize(2, 2);
            m << 0, 1, 1, 0;
            return m;
        case GateKind::Y:
            m.resize(2, 2);
            m << 0, -i, i, 0;
            return m;
        case GateKind::RX:
            m.resize(2, 2);
            m << c, -i * s, -i * s, c;
            return m;
        case GateKind::RY:
            m.resize(2, 2);
            m << c, -s, s, c;
            return m;
        case GateKind::RZ:
            m = ComplexMatrix::Zero(2, 2);
            m(0, 0) = std::exp(-i * (angle / 2));
            m(1, 1) = std::exp(i * (angle / 2));
            return m;
        case GateKind::RXX:
            m = ComplexMatrix::Zero(4, 4);
            for (int k = 0; k < 4; ++k) {
                m(k, k) = c;
                m(3 - k, k) = -i * s;
            }
            return m;
        case GateKind::RZZ:
            m = ComplexMatrix::Zero(4, 4);
            for (int k = 0; k < 4; ++k) {
                const int parity = (k & 1) ^ ((k >> 1) & 1);
                m(k, k) = std::exp((parity ? i : -i) * (angle / 2));
            }
            return m;
        case GateKind::CNOT:
            m = ComplexMatrix::Zero(4, 4);
            m(0, 0) = 1;
            m(2, 2) = 1;
            m(3, 1) = 1;
            m(1, 3) = 1;
            return m;
    }
    return m;
}

Gate Gate::adjoint() const {
    Gate g = *this;
    if (gate_has_angle(kind)) {
        g.angle = -angle;
    }
    return g;
}

Circuit::Circuit(int qubits) : qubits_(qubits) {
    if (qubits < 1 || qubits > 62) {
        fail(Errc::InvalidParams, "circuit width must be in [1, 62]");
    }
}

Circuit &Circuit::add(const Gate &gate) {
    if (!std::isfinite(gate.angle)) {
        fail(Errc::InvalidParams, "gate angle must be finite");
    }
    for (int q : gate.qubits()) {
        if (q < 0 || q >= qubits_) {
            fail(Errc::InvalidParams, "gate target out of range");
        }
    }
    if (gate.arity() == 2 && gate.targets[0] == gate.targets[1]) {
        fail(Errc::InvalidParams, "two-qubit gate targets must be distinct");
    }
    gates_.push_back(gate);
    return *this;
}

ComplexMatrix Circuit::unitary() const {
    const std::int64_t dim = std::int64_t{1} << qubits_;
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    for (const Gate &g : gates_) {
        const ComplexMatrix local = g.matrix();
        ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
        // Embed the local gate: act on the bits of g.qubits(), identity elsewhere.
        std::uint64_t mask = 0;
        for (int q : g.qubits()) {
            mask |= std::uint64_t{1} << q;
        }
        const int dl = 1 << g.arity();
        for (std::int64_t col = 0; col < dim; ++col) {
            const auto c = static_cast<std::uint64_t>(col);
            int lc = 0;
            for (int k = 0; k < g.arity(); ++k) {
                lc |= static_cast<int>((c >> g.targets[static_cast<std::size_t>(k)]) & 1U) << k;
            }
            for (int lr = 0; lr < dl; ++lr) {
                std::uint64_t r = c & ~mask;
                for (int k = 0; k < g.arity(); ++k) {
                    r |= static_cast<std::uint64_t>((lr >> k) & 1) << g.targets[static_cast<std::size_t>(k)];
                }
                full(static_cast<Eigen::Index>(r), col) = local(lr, lc);
            }
        }
        u = full * u;
    }
    return u;
}

Circuit adjoint(const Circuit &c) {
    Circuit out(c.qubits_);
    out.fold_count_ = c.fold_count_;
    out.gates_.reserve(c.gates_.size());
    for (auto it = c.gates_.rbegin(); it != c.gates_.rend(); ++it) {
        out.gates_.push_back(it->adjoint());
    }
    return out;
}

Circuit fold(const Circuit &c, int n) {
    if (n < 0) {
        fail(Errc::InvalidParams, "fold count must be nonnegative");
    }
    Circuit base = c;
    base.fold_count_ = 0;
    const Circuit inv = adjoint(base);
    Circuit out(c.qubits_);
    out.gates_.reserve(c.gates_.size() * static_cast<std::size_t>(2 * n + 1));
    out.gates_ = base.gates_;
    for (int k = 0; k < n; ++k) {
        out.gates_.insert(out.gates_.end(), inv.gates_.begin(), inv.gates_.end());
        out.gates_.insert(out.gates_.end(), base.gates_.begin(), base.gates_.end());
    }
    out.fold_count_ = n;
    return out;
}

Circuit build_ising_trotter(int qubits, double field, double time, int steps) {
    if (qubits < 2) {
        fail(Errc::InvalidParams, "Ising chain needs at least 2 qubits");
    }
    if (steps < 1) {
        fail(Errc::InvalidParams, "Ising chain needs at least one Trotter step");
    }
    if (!std::isfinite(field) || !std::isfinite(time)) {
        fail(Errc::InvalidParams, "Ising parameters must be finite");
    }
    const double dt = time / steps;
    // exp(+i dt X X) = RXX(-2 dt), exp(+i field dt Z) = RZ(-2 field dt)
    const double bond_angle = -2.0 * dt;
    const double field_angle = -2.0 * field * dt;
    Circuit c(qubits);
    for (int step = 0; step < steps; ++step) {
        for (int q = 0; q + 1 < qubits; ++q) {
            c.add(Gate::two(GateKind::RXX, q, q + 1, bond_angle));
        }
        c.add(Gate::two(GateKind::RXX, qubits - 1, 0, bond_angle));
        for (int q = 0; q < qubits; ++q) {
            c.add(Gate::one(GateKind::RZ, q, field_angle));
        }
    }
    return c;
}

std::size_t su2_angle_count(int qubits, int layers) {
    return 2 * static_cast<std::size_t>(qubits) * static_cast<std::size_t>(layers + 1);
}

Circuit build_su2_ansatz(int qubits, int layers, std::span<const double> angles) {
    if (qubits < 1 || layers < 0) {
        fail(Errc::InvalidParams, "ansatz needs qubits >= 1 and layers >= 0");
    }
    if (angles.size() != su2_angle_count(qubits, layers)) {
        fail(Errc::AngleCountMismatch, "expected " + std::to_string(su2_angle_count(qubits, layers)) +
                                           " angles, got " + std::to_string(angles.size()));
    }
    Circuit c(qubits);
    std::size_t next = 0;
    for (int block = 0; block <= layers; ++block) {
        for (int q = 0; q < qubits; ++q) {
            c.add(Gate::one(GateKind::RY, q, angles[next++]));
        }
        for (int q = 0; q < qubits; ++q) {
            c.add(Gate::one(GateKind::RZ, q, angles[next++]));
        }
        if (block < layers) {
            for (int q = 0; q + 1 < qubits; ++q) {
                c.add(Gate::two(GateKind::CNOT, q, q + 1));
            }
        }
    }
    return c;
}

}  // namespace pielab
