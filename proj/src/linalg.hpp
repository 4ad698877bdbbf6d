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

#pragma once

// Dense decompositions shared by processes and bogoliubov. Internal header.

#include "qpgnet/spectral.hpp"

namespace qpgnet::linalg {

struct SymmetricEigen {
  RVector values;   // ascending
  RMatrix vectors;  // orthonormal columns
};

/// Real symmetric eigendecomposition. Only the lower triangle of `a` is
/// referenced.
SymmetricEigen symmetric_eigen(RMatrix a);

/// Eigenvalues only, ascending.
RVector symmetric_eigenvalues(RMatrix a);

struct Svd {
  CMatrix u;  // thin left singular vectors
  RVector s;  // descending
  CMatrix v;  // thin right singular vectors, a = u diag(s) v^H
};

Svd thin_svd(const CMatrix& a);

/// Thin SVD of weight * left * right^T from QR factorizations of the tall
/// factors and an SVD of the small core. Returns rank(left) <= r triplets.
Svd factored_svd(const CMatrix& left, const CMatrix& right, double weight);
RVector singular_values(const CMatrix& a);

/// True when every imaginary part is exactly zero.
bool is_real(const CMatrix& a);

/// Singular values of a complex symmetric matrix, descending. Uses the
/// symmetric eigenvalues when the matrix is real.
RVector takagi_values(const CMatrix& symmetric);

}  // namespace qpgnet::linalg
