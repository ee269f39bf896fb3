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

#include "pielab/linalg.hpp"

#include <cmath>
#include <sstream>

#include "pielab/error.hpp"

namespace pielab {

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::NonHermitian: return "NonHermitian";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::InvalidParams: return "InvalidParams";
        case Errc::AngleCountMismatch: return "AngleCountMismatch";
        case Errc::InvalidProbability: return "InvalidProbability";
        case Errc::InvalidChannel: return "InvalidChannel";
        case Errc::WidthMismatch: return "WidthMismatch";
        case Errc::TooLarge: return "TooLarge";
        case Errc::DegenerateDesign: return "DegenerateDesign";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::InsufficientTraining: return "InsufficientTraining";
        case Errc::Infeasible: return "Infeasible";
        case Errc::SingularPtm: return "SingularPtm";
        case Errc::PoorFit: return "PoorFit";
        case Errc::MissingQpd: return "MissingQpd";
        case Errc::ParseError: return "ParseError";
        case Errc::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string &what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {
}

void fail(Errc code, const std::string &what) {
    throw Error(code, what);
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

RealMatrix kron(const RealMatrix &a, const RealMatrix &b) {
    RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

bool is_square(const ComplexMatrix &m) {
    return m.rows() == m.cols() && m.rows() > 0;
}

bool all_finite(const ComplexMatrix &m) {
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        const cplx z = m.data()[k];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (!is_square(m)) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const ComplexMatrix &h, double tol) {
    if (!is_square(h)) {
        fail(Errc::DimensionMismatch, "min_eigenvalue needs a square matrix");
    }
    const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol) {
        std::ostringstream msg;
        msg << "matrix deviates from Hermitian by " << asym;
        fail(Errc::NonHermitian, msg.str());
    }
    const ComplexMatrix herm = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

int log2_dim(std::int64_t dim) {
    if (dim <= 0 || (dim & (dim - 1)) != 0) {
        return -1;
    }
    int n = 0;
    while ((std::int64_t{1} << n) < dim) {
        ++n;
    }
    return n;
}

}  // namespace pielab
