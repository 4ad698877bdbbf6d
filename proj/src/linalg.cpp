// Copyright 2026 The qpgnet Authors
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

#include "linalg.hpp"

#include <algorithm>
#include <functional>

#include "qpgnet/errors.hpp"

namespace qpgnet::linalg {

SymmetricEigen symmetric_eigen(RMatrix a) {
  if (a.rows() != a.cols()) throw UsageError("symmetric_eigen needs a square matrix");
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<RMatrix> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

RVector symmetric_eigenvalues(RMatrix a) {
  if (a.rows() != a.cols()) throw UsageError("symmetric_eigenvalues needs a square matrix");
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<RMatrix> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  return es.eigenvalues();
}

Svd thin_svd(const CMatrix& a) {
  Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge");
  Svd out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  if (!out.s.allFinite() || !out.u.allFinite() || !out.v.allFinite()) {
    throw NumericalError("SVD produced non-finite values");
  }
  return out;
}

Svd factored_svd(const CMatrix& left, const CMatrix& right, double weight) {
  const Eigen::Index r = left.cols();
  if (right.cols() != r || left.rows() < r || right.rows() < r) {
    throw UsageError("factored_svd needs tall factors with matching column counts");
  }
  Eigen::HouseholderQR<CMatrix> ql(left), qr(right);
  const CMatrix q1 = ql.householderQ() * CMatrix::Identity(left.rows(), r);
  const CMatrix q2 = qr.householderQ() * CMatrix::Identity(right.rows(), r);
  const CMatrix r1 = ql.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  const CMatrix r2 = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  // w L R^T = Q1 (w R1 R2^T) Q2^T = (Q1 X) s (conj(Q2) Y)^H.
  Svd core = thin_svd(weight * r1 * r2.transpose());
  return {q1 * core.u, std::move(core.s), q2.conjugate() * core.v};
}

RVector singular_values(const CMatrix& a) {
  Eigen::BDCSVD<CMatrix> svd(a);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge");
  return svd.singularValues();
}

bool is_real(const CMatrix& a) { return (a.imag().array() == 0.0).all(); }

RVector takagi_values(const CMatrix& symmetric) {
  if (is_real(symmetric)) {
    RVector w = symmetric_eigenvalues(symmetric.real()).cwiseAbs();
    std::sort(w.data(), w.data() + w.size(), std::greater<>());
    return w;
  }
  return singular_values(symmetric);
}

}  // namespace qpgnet::linalg
