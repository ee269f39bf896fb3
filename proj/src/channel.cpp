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

#include "pielab/channel.hpp"

#include <cmath>

#include "pielab/error.hpp"
#include "pielab/pauli.hpp"

namespace pielab {

namespace {

int qubits_for_dim(Eigen::Index dim, const char *what) {
    const int n = log2_dim(dim);
    if (n < 1) {
        fail(Errc::DimensionMismatch, std::string(what) + " dimension must be a power of two >= 2");
    }
    return n;
}

void require_finite(const ComplexMatrix &m, const char *what) {
    if (!all_finite(m)) {
        fail(Errc::InvalidChannel, std::string(what) + " has non-finite entries");
    }
}

// Entry (a*d + i) of the vectorized Kraus operator is K(i, a).
ComplexVector choi_vector(const ComplexMatrix &k) {
    const Eigen::Index d = k.rows();
    ComplexVector v(d * d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index i = 0; i < d; ++i) {
            v(a * d + i) = k(i, a);
        }
    }
    return v;
}

ComplexMatrix apply_kraus(const std::vector<ComplexMatrix> &ops, const ComplexMatrix &m) {
    ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
    for (const auto &k : ops) {
        out.noalias() += k * m * k.adjoint();
    }
    return out;
}

}  // namespace

Channel Channel::identity(int qubits) {
    const std::int64_t d = std::int64_t{1} << qubits;
    return Channel(qubits, Unitary{ComplexMatrix::Identity(d, d)});
}

Channel Channel::unitary(ComplexMatrix u) {
    if (u.rows() != u.cols()) {
        fail(Errc::DimensionMismatch, "unitary must be square");
    }
    const int n = qubits_for_dim(u.rows(), "unitary");
    require_finite(u, "unitary");
    return Channel(n, Unitary{std::move(u)});
}

Channel Channel::kraus(std::vector<ComplexMatrix> ops) {
    if (ops.empty()) {
        fail(Errc::InvalidChannel, "Kraus list is empty");
    }
    const Eigen::Index d = ops.front().rows();
    const int n = qubits_for_dim(d, "Kraus operator");
    for (const auto &k : ops) {
        if (k.rows() != d || k.cols() != d) {
            fail(Errc::DimensionMismatch, "Kraus operators must share one square dimension");
        }
        require_finite(k, "Kraus operator");
    }
    return Channel(n, Kraus{std::move(ops)});
}

Channel Channel::ptm(RealMatrix r) {
    if (r.rows() != r.cols()) {
        fail(Errc::DimensionMismatch, "PTM must be square");
    }
    const int n2 = log2_dim(r.rows());
    if (n2 < 2 || n2 % 2 != 0) {
        fail(Errc::DimensionMismatch, "PTM dimension must be 4^n");
    }
    if (!r.allFinite()) {
        fail(Errc::InvalidChannel, "PTM has non-finite entries");
    }
    return Channel(n2 / 2, Ptm{std::move(r)});
}

Channel Channel::choi(ComplexMatrix j) {
    if (j.rows() != j.cols()) {
        fail(Errc::DimensionMismatch, "Choi matrix must be square");
    }
    const int n2 = log2_dim(j.rows());
    if (n2 < 2 || n2 % 2 != 0) {
        fail(Errc::DimensionMismatch, "Choi dimension must be 4^n");
    }
    require_finite(j, "Choi matrix");
    return Channel(n2 / 2, Choi{std::move(j)});
}

bool Channel::is_cptp(double tol) const {
    const ComplexMatrix j = choi_of(*this);
    if (!is_hermitian(j, tol)) {
        return false;
    }
    if (min_eigenvalue(j, tol) < -tol) {
        return false;
    }
    const ComplexMatrix pt = partial_trace_output(j, qubits_);
    return (pt - ComplexMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix partial_trace_output(const ComplexMatrix &choi, int qubits) {
    const std::int64_t d = std::int64_t{1} << qubits;
    if (choi.rows() != d * d || choi.cols() != d * d) {
        fail(Errc::DimensionMismatch, "Choi matrix does not match qubit count");
    }
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (std::int64_t a = 0; a < d; ++a) {
        for (std::int64_t b = 0; b < d; ++b) {
            cplx acc = 0.0;
            for (std::int64_t i = 0; i < d; ++i) {
                acc += choi(a * d + i, b * d + i);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

ComplexMatrix choi_of(const Channel &ch) {
    const std::int64_t d = ch.dim();
    return std::visit(
        [&](const auto &rep) -> ComplexMatrix {
            using T = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<T, Channel::Choi>) {
                return rep.j;
            } else if constexpr (std::is_same_v<T, Channel::Unitary>) {
                const ComplexVector v = choi_vector(rep.u);
                return v * v.adjoint();
            } else if constexpr (std::is_same_v<T, Channel::Kraus>) {
                ComplexMatrix j = ComplexMatrix::Zero(d * d, d * d);
                for (const auto &k : rep.ops) {
                    const ComplexVector v = choi_vector(k);
                    j.noalias() += v * v.adjoint();
                }
                return j;
            } else {
                // J = (1/d) sum_ij R_ij P_j^T (x) P_i
                const auto basis = pauli_basis(ch.qubits());
                std::vector<ComplexMatrix> mats;
                mats.reserve(basis.size());
                for (const auto &p : basis) {
                    mats.push_back(p.matrix());
                }
                ComplexMatrix j = ComplexMatrix::Zero(d * d, d * d);
                for (std::size_t jj = 0; jj < basis.size(); ++jj) {
                    ComplexMatrix out = ComplexMatrix::Zero(d, d);
                    bool any = false;
                    for (std::size_t ii = 0; ii < basis.size(); ++ii) {
                        const double r = rep.r(static_cast<Eigen::Index>(ii), static_cast<Eigen::Index>(jj));
                        if (r != 0.0) {
                            out += r * mats[ii];
                            any = true;
                        }
                    }
                    if (any) {
                        j += kron(ComplexMatrix(mats[jj].transpose()), out);
                    }
                }
                return j / static_cast<double>(d);
            }
        },
        ch.representation());
}

std::vector<ComplexMatrix> kraus_of(const Channel &ch) {
    if (const auto *u = std::get_if<Channel::Unitary>(&ch.representation())) {
        return {u->u};
    }
    if (const auto *k = std::get_if<Channel::Kraus>(&ch.representation())) {
        return k->ops;
    }
    const ComplexMatrix j = choi_of(ch);
    if (!is_hermitian(j, 1e-9)) {
        fail(Errc::InvalidChannel, "Choi matrix is not Hermitian; map is not completely positive");
    }
    const std::int64_t d = ch.dim();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (j + j.adjoint()));
    const RealVector &evals = solver.eigenvalues();
    const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
    std::vector<ComplexMatrix> ops;
    for (Eigen::Index e = evals.size() - 1; e >= 0; --e) {
        const double lam = evals(e);
        if (lam < -1e-9 * scale) {
            fail(Errc::InvalidChannel, "Choi matrix has a negative eigenvalue; map is not completely positive");
        }
        if (lam <= 1e-12 * scale) {
            continue;
        }
        const ComplexVector v = solver.eigenvectors().col(e) * std::sqrt(lam);
        ComplexMatrix k(d, d);
        for (std::int64_t a = 0; a < d; ++a) {
            for (std::int64_t i = 0; i < d; ++i) {
                k(i, a) = v(a * d + i);
            }
        }
        ops.push_back(std::move(k));
    }
    if (ops.empty()) {
        ops.push_back(ComplexMatrix::Zero(d, d));
    }
    return ops;
}

RealMatrix ptm_of(const Channel &ch) {
    if (const auto *p = std::get_if<Channel::Ptm>(&ch.representation())) {
        return p->r;
    }
    const auto basis = pauli_basis(ch.qubits());
    const auto nb = static_cast<Eigen::Index>(basis.size());
    const double d = static_cast<double>(ch.dim());
    RealMatrix r(nb, nb);
    if (const auto *c = std::get_if<Channel::Choi>(&ch.representation())) {
        // R_ij = Tr[(P_j^T (x) P_i) J] / d
        for (Eigen::Index jj = 0; jj < nb; ++jj) {
            const ComplexMatrix pjt = basis[static_cast<std::size_t>(jj)].matrix().transpose();
            for (Eigen::Index ii = 0; ii < nb; ++ii) {
                const ComplexMatrix op = kron(pjt, basis[static_cast<std::size_t>(ii)].matrix());
                r(ii, jj) = (op * c->j).trace().real() / d;
            }
        }
        return r;
    }
    const auto ops = kraus_of(ch);
    for (Eigen::Index jj = 0; jj < nb; ++jj) {
        const ComplexMatrix out = apply_kraus(ops, basis[static_cast<std::size_t>(jj)].matrix());
        for (Eigen::Index ii = 0; ii < nb; ++ii) {
            r(ii, jj) = pauli_trace(basis[static_cast<std::size_t>(ii)], out).real() / d;
        }
    }
    return r;
}

Channel compose(const Channel &a, const Channel &b) {
    if (a.qubits() != b.qubits()) {
        fail(Errc::DimensionMismatch, "compose needs channels on the same number of qubits");
    }
    const auto *ua = std::get_if<Channel::Unitary>(&a.representation());
    const auto *ub = std::get_if<Channel::Unitary>(&b.representation());
    if (ua && ub) {
        return Channel::unitary(ua->u * ub->u);
    }
    const bool a_kraus = ua || std::holds_alternative<Channel::Kraus>(a.representation());
    const bool b_kraus = ub || std::holds_alternative<Channel::Kraus>(b.representation());
    if (a_kraus && b_kraus) {
        const auto ka = kraus_of(a);
        const auto kb = kraus_of(b);
        std::vector<ComplexMatrix> ops;
        ops.reserve(ka.size() * kb.size());
        for (const auto &x : ka) {
            for (const auto &y : kb) {
                ops.push_back(x * y);
            }
        }
        return Channel::kraus(std::move(ops));
    }
    return Channel::ptm(ptm_of(a) * ptm_of(b));
}

ComplexMatrix apply_channel(const Channel &ch, const ComplexMatrix &m) {
    if (m.rows() != ch.dim() || m.cols() != ch.dim()) {
        fail(Errc::DimensionMismatch, "operator dimension does not match channel");
    }
    if (const auto *u = std::get_if<Channel::Unitary>(&ch.representation())) {
        return u->u * m * u->u.adjoint();
    }
    if (const auto *k = std::get_if<Channel::Kraus>(&ch.representation())) {
        return apply_kraus(k->ops, m);
    }
    // Pauli expansion: L(m) = sum_ij R_ij Tr[P_j m]/d P_i
    const RealMatrix r = ptm_of(ch);
    const auto basis = pauli_basis(ch.qubits());
    const double d = static_cast<double>(ch.dim());
    Eigen::VectorXcd coeff(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        coeff(static_cast<Eigen::Index>(j)) = pauli_trace(basis[j], m) / d;
    }
    const Eigen::VectorXcd out_coeff = r.cast<cplx>() * coeff;
    ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const cplx c = out_coeff(static_cast<Eigen::Index>(i));
        if (c != cplx(0.0)) {
            out += c * basis[i].matrix();
        }
    }
    return out;
}

ComplexMatrix superoperator_of(const std::vector<ComplexMatrix> &kraus) {
    if (kraus.empty()) {
        fail(Errc::InvalidChannel, "Kraus list is empty");
    }
    const Eigen::Index d = kraus.front().rows();
    ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
    ComplexMatrix basis = ComplexMatrix::Zero(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            basis.setZero();
            basis(r, c) = 1.0;
            const ComplexMatrix out = apply_kraus(kraus, basis);
            for (Eigen::Index cc = 0; cc < d; ++cc) {
                for (Eigen::Index rr = 0; rr < d; ++rr) {
                    s(rr + d * cc, r + d * c) = out(rr, cc);
                }
            }
        }
    }
    return s;
}

}  // namespace pielab
