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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace pielab {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Standard tensor product: result(i, j) = a(i / db, j / db) * b(i % db, j % db).
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
RealMatrix kron(const RealMatrix &a, const RealMatrix &b);

bool is_square(const ComplexMatrix &m);
bool all_finite(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tol = 1e-10);

/// Smallest eigenvalue of a Hermitian matrix. Throws Errc::NonHermitian when
/// max |h - h^dagger| exceeds `tol`; otherwise the Hermitian part is used.
double min_eigenvalue(const ComplexMatrix &h, double tol = 1e-10);

/// log2 of a power-of-two dimension, or -1 when `dim` is not a power of two.
int log2_dim(std::int64_t dim);

}  // namespace pielab
