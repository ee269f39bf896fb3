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

#include "pielab/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pielab/error.hpp"
#include "pielab/noise.hpp"
#include "pielab/rng.hpp"

namespace pielab {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(master) ^ (index * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

double Rng::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace pielab

namespace pielab::kernels {

namespace {

inline std::uint64_t insert_zero(std::uint64_t x, int bit) {
    const std::uint64_t low = x & ((std::uint64_t{1} << bit) - 1);
    return ((x >> bit) << (bit + 1)) | low;
}

template <int Arity>
struct LocalLayout {
    static constexpr int dl = 1 << Arity;
    static constexpr int nv = dl * dl;
    std::array<std::uint64_t, dl> offset{};
    std::array<int, Arity> sorted{};
    alignas(64) double s_re[nv * nv];
    alignas(64) double s_im[nv * nv];

    LocalLayout(std::span<const int> targets, const ComplexMatrix &superop) {
        for (int l = 0; l < dl; ++l) {
            std::uint64_t off = 0;
            for (int k = 0; k < Arity; ++k) {
                if ((l >> k) & 1) {
                    off |= std::uint64_t{1} << targets[static_cast<std::size_t>(k)];
                }
            }
            offset[static_cast<std::size_t>(l)] = off;
        }
        for (int k = 0; k < Arity; ++k) {
            sorted[static_cast<std::size_t>(k)] = targets[static_cast<std::size_t>(k)];
        }
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < nv; ++i) {
            for (int j = 0; j < nv; ++j) {
                s_re[i * nv + j] = superop(i, j).real();
                s_im[i * nv + j] = superop(i, j).imag();
            }
        }
    }

    std::uint64_t base(std::uint64_t x) const {
        for (int k = 0; k < Arity; ++k) {
            x = insert_zero(x, sorted[static_cast<std::size_t>(k)]);
        }
        return x;
    }

    // Transforms one local block: rows row_base + offset[r], columns col_base + offset[c].
    inline void block(cplx *data, std::uint64_t dim, std::uint64_t row_base, std::uint64_t col_base) const {
        double v_re[nv];
        double v_im[nv];
        std::uint64_t idx[nv];
        for (int c = 0; c < dl; ++c) {
            const std::uint64_t col = (col_base + offset[static_cast<std::size_t>(c)]) * dim;
            for (int r = 0; r < dl; ++r) {
                const std::uint64_t k = col + row_base + offset[static_cast<std::size_t>(r)];
                idx[r + dl * c] = k;
                v_re[r + dl * c] = data[k].real();
                v_im[r + dl * c] = data[k].imag();
            }
        }
        for (int i = 0; i < nv; ++i) {
            double re = 0.0;
            double im = 0.0;
            const double *sr = s_re + i * nv;
            const double *si = s_im + i * nv;
            for (int j = 0; j < nv; ++j) {
                re += sr[j] * v_re[j] - si[j] * v_im[j];
                im += sr[j] * v_im[j] + si[j] * v_re[j];
            }
            data[idx[i]] = cplx(re, im);
        }
    }
};

template <int Arity>
void sweep(ComplexMatrix &rho, std::span<const int> targets, const ComplexMatrix &superop, bool parallel) {
    const LocalLayout<Arity> layout(targets, superop);
    const auto dim = static_cast<std::uint64_t>(rho.rows());
    const auto nb = static_cast<std::int64_t>(dim >> Arity);
    cplx *data = rho.data();
#pragma omp parallel for schedule(static) if (parallel && nb >= 16)
    for (std::int64_t cb = 0; cb < nb; ++cb) {
        const std::uint64_t col_base = layout.base(static_cast<std::uint64_t>(cb));
        for (std::int64_t rb = 0; rb < nb; ++rb) {
            layout.block(data, dim, layout.base(static_cast<std::uint64_t>(rb)), col_base);
        }
    }
}

void check(const ComplexMatrix &rho, std::span<const int> targets, const ComplexMatrix &superop) {
    const int n = log2_dim(rho.rows());
    if (n < 1 || rho.rows() != rho.cols()) {
        fail(Errc::DimensionMismatch, "operator must be 2^n x 2^n");
    }
    if (targets.empty() || targets.size() > 2) {
        fail(Errc::InvalidParams, "local superoperators act on one or two qubits");
    }
    const Eigen::Index nv = Eigen::Index{1} << (2 * targets.size());
    if (superop.rows() != nv || superop.cols() != nv) {
        fail(Errc::DimensionMismatch, "superoperator size does not match target count");
    }
    for (int q : targets) {
        if (q < 0 || q >= n) {
            fail(Errc::WidthMismatch, "superoperator target outside the register");
        }
    }
    if (targets.size() == 2 && targets[0] == targets[1]) {
        fail(Errc::InvalidParams, "targets must be distinct");
    }
}

void dispatch(ComplexMatrix &rho, std::span<const int> targets, const ComplexMatrix &superop, bool parallel) {
    check(rho, targets, superop);
    if (targets.size() == 1) {
        sweep<1>(rho, targets, superop, parallel);
    } else {
        sweep<2>(rho, targets, superop, parallel);
    }
}

}  // namespace

void apply_superop(ComplexMatrix &rho, std::span<const int> targets, const ComplexMatrix &superop) {
    dispatch(rho, targets, superop, true);
}

void apply_superop_serial(ComplexMatrix &rho, std::span<const int> targets, const ComplexMatrix &superop) {
    dispatch(rho, targets, superop, false);
}

ComplexMatrix embed(const ComplexMatrix &local, std::span<const int> targets, int qubits) {
    const std::int64_t dim = std::int64_t{1} << qubits;
    const int arity = static_cast<int>(targets.size());
    std::uint64_t mask = 0;
    for (int q : targets) {
        mask |= std::uint64_t{1} << q;
    }
    ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
    for (std::int64_t col = 0; col < dim; ++col) {
        const auto c = static_cast<std::uint64_t>(col);
        int lc = 0;
        for (int k = 0; k < arity; ++k) {
            lc |= static_cast<int>((c >> targets[static_cast<std::size_t>(k)]) & 1U) << k;
        }
        for (int lr = 0; lr < (1 << arity); ++lr) {
            std::uint64_t r = c & ~mask;
            for (int k = 0; k < arity; ++k) {
                r |= static_cast<std::uint64_t>((lr >> k) & 1) << targets[static_cast<std::size_t>(k)];
            }
            full(static_cast<Eigen::Index>(r), col) = local(lr, lc);
        }
    }
    return full;
}

}  // namespace pielab::kernels

namespace pielab::reference {

ComplexMatrix evolve(const NoisyCircuit &circuit, const ComplexMatrix &rho) {
    ComplexMatrix out = rho;
    for (const NoisyOp &op : circuit.ops) {
        const auto targets = op.gate.qubits();
        const ComplexMatrix u = kernels::embed(op.gate.matrix(), targets, circuit.qubits);
        out = u * out * u.adjoint();
        if (op.noise) {
            ComplexMatrix acc = ComplexMatrix::Zero(out.rows(), out.cols());
            for (const auto &k : kraus_of(*op.noise)) {
                const ComplexMatrix kf = kernels::embed(k, targets, circuit.qubits);
                acc += kf * out * kf.adjoint();
            }
            out = acc;
        }
        if (op.frame) {
            const ComplexMatrix p = kernels::embed(op.frame->matrix(), targets, circuit.qubits);
            out = p * out * p.adjoint();
        }
    }
    return out;
}

}  // namespace pielab::reference
