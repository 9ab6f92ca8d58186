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

#include "tadv/linalg.h"

#include <algorithm>

namespace tadv {

double hermiticity_residual(const ComplexMatrix& a) {
  if (a.size() == 0) {
    return 0.0;
  }
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double tol) { return hermiticity_residual(a) <= tol; }

RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
  ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eigenvalue(const ComplexMatrix& a) { return hermitian_eigenvalues(a).minCoeff(); }

double max_eigenvalue(const ComplexMatrix& a) { return hermitian_eigenvalues(a).maxCoeff(); }

double psd_residual(const ComplexMatrix& a) { return std::max(0.0, -min_eigenvalue(a)); }

bool is_psd(const ComplexMatrix& a, double tol) { return psd_residual(a) <= tol; }

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) {
    return 0.0;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

bool has_unit_trace(const ComplexMatrix& a, double tol) { return std::abs(a.trace() - 1.0) <= tol; }

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

ComplexMatrix basis_projector(int d, int k) {
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  p(k, k) = 1.0;
  return p;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix sum(const std::vector<ComplexMatrix>& ops, int d) {
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (const auto& op : ops) {
    total += op;
  }
  return total;
}

}  // namespace tadv
