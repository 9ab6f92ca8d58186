// Copyright 2026 The tadv Authors
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
#include <vector>

#include <Eigen/Dense>

namespace tadv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Max-abs entry of A - A^dagger.
double hermiticity_residual(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol);

/// Eigenvalues of the Hermitian part (A + A^dagger)/2, ascending.
RealVector hermitian_eigenvalues(const ComplexMatrix& a);
double min_eigenvalue(const ComplexMatrix& a);
double max_eigenvalue(const ComplexMatrix& a);

/// max(0, -lambda_min) of the Hermitian part.
double psd_residual(const ComplexMatrix& a);
bool is_psd(const ComplexMatrix& a, double tol);

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

bool has_unit_trace(const ComplexMatrix& a, double tol);

/// |v><v|
ComplexMatrix projector(const ComplexVector& v);
/// |k><k| in dimension d.
ComplexMatrix basis_projector(int d, int k);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// A B - B A
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix sum(const std::vector<ComplexMatrix>& ops, int d);

}  // namespace tadv
