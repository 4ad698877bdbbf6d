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

#include "qpgnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpgnet/errors.hpp"

namespace qpgnet {
namespace {

constexpr Complex kI(0.0, 1.0);

// Vacuum moments of O''_k, assembled into the symmetrized quadrature
// covariance.
RMatrix assemble(const CMatrix& h1, const CMatrix& h2, const CMatrix& h3) {
  const CMatrix oo = h2.transpose() * h3;                                          // <O_k O_l>
  const CMatrix ood = h1.transpose() * h1.conjugate() + h2.transpose() * h2.conjugate();  // <O_k O_l^+>
  const CMatrix odo = h3.adjoint() * h3;                                           // <O_k^+ O_l>
  const CMatrix odod = h3.adjoint() * h2.conjugate();                              // <O_k^+ O_l^+>

  const CMatrix xx = 0.5 * (oo + ood + odo + odod);
  const CMatrix xy = (oo - ood + odo - odod) / (2.0 * kI);
  const CMatrix yx = (oo + ood - odo - odod) / (2.0 * kI);
  const CMatrix yy = -0.5 * (oo - ood - odo + odod);

  const int n = static_cast<int>(h2.cols());
  RMatrix s(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      s(2 * k, 2 * l) = 0.5 * (xx(k, l) + xx(l, k)).real();
      s(2 * k, 2 * l + 1) = 0.5 * (xy(k, l) + yx(l, k)).real();
      s(2 * k + 1, 2 * l) = 0.5 * (yx(k, l) + xy(l, k)).real();
      s(2 * k + 1, 2 * l + 1) = 0.5 * (yy(k, l) + yy(l, k)).real();
    }
  }
  return s;
}

}  // namespace

SpectralFunction CompositeAmplitudes::h1_function(int k) const {
  return mode_function(h1, k, grid_out);
}
SpectralFunction CompositeAmplitudes::h2_function(int k) const {
  return mode_function(h2, k, grid_in);
}
SpectralFunction CompositeAmplitudes::h3_function(int k) const {
  return mode_function(h3, k, grid_in);
}

RVector CompositeAmplitudes::commutator_residuals() const {
  return (h1.colwise().squaredNorm() + h2.colwise().squaredNorm() - h3.colwise().squaredNorm())
             .transpose()
             .array() -
         1.0;
}

CompositeAmplitudes compose(const PDCKernels& pdc, const SFGKernels& sfg, const ModeSet& outputs) {
  if (!(outputs.grid == sfg.grid_out)) throw UsageError("output modes are not on the SFG output grid");
  if (!(pdc.grid == sfg.grid_in)) throw UsageError("PDC and SFG input grids differ");
  const CMatrix o = outputs.discrete();
  // Row vectors o_k^T K, stored transposed as columns.
  const CMatrix ova = o.transpose() * sfg.va;  // N x n_in
  return {sfg.grid_in, sfg.grid_out, (o.transpose() * sfg.ua).transpose(),
          -(ova * pdc.u).transpose(), -(ova * pdc.v).transpose()};
}

CovarianceMatrix::CovarianceMatrix(const RMatrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() % 2 != 0 || entries.rows() == 0) {
    throw ValidationError("covariance matrix must be square with even, nonzero size");
  }
  if (!entries.allFinite()) throw NumericalError("covariance matrix has non-finite entries");
  const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(1.0, entries.cwiseAbs().maxCoeff())) {
    std::ostringstream msg;
    msg << "covariance matrix is not symmetric (max deviation " << asym << ")";
    throw ValidationError(msg.str());
  }
  entries_ = 0.5 * (entries + entries.transpose());
}

CovarianceMatrix CovarianceMatrix::vacuum(int modes) {
  return CovarianceMatrix(0.5 * RMatrix::Identity(2 * modes, 2 * modes));
}

CovarianceMatrix covariance_from_amplitudes(const CompositeAmplitudes& a) {
  if (a.h1.cols() != a.h2.cols() || a.h2.cols() != a.h3.cols() || a.h2.rows() != a.h3.rows()) {
    throw UsageError("amplitude matrices disagree in shape");
  }
  return CovarianceMatrix(assemble(a.h1, a.h2, a.h3));
}

CovarianceMatrix pdc_bin_covariance(const PDCKernels& pdc, const ModeSet& bins) {
  if (!(bins.grid == pdc.grid)) throw UsageError("bins are not on the PDC grid");
  const double err = bins.orthonormality_error();
  if (err > 1e-4) {
    std::ostringstream msg;
    msg << "bins are not orthonormal (Gram deviation " << err << ")";
    throw ValidationError(msg.str());
  }
  const CMatrix a = bins.discrete();
  const CMatrix h1 = CMatrix::Zero(a.rows(), a.cols());
  return CovarianceMatrix(assemble(h1, pdc.u.transpose() * a, pdc.v.transpose() * a));
}

Purity purity(const CovarianceMatrix& sigma) {
  const double det = sigma.entries().determinant();
  if (!(det > 0.0)) throw NumericalError("covariance determinant is not positive");
  const double raw = 1.0 / (std::pow(2.0, sigma.modes()) * std::sqrt(det));
  return {std::min(raw, 1.0), raw, raw > 1.0 + 1e-6};
}

double squeezing_db(const CovarianceMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sigma.entries(), Eigen::EigenvaluesOnly);
  return -10.0 * std::log10(2.0 * es.eigenvalues()[0]);
}

PhysicalityReport check_physical(const CovarianceMatrix& sigma) {
  const int n = sigma.modes();
  RMatrix omega = RMatrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  // i Omega sigma has eigenvalues +-nu_k.
  const CMatrix m = kI * (omega * sigma.entries()).cast<Complex>();
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  RVector mags = es.eigenvalues().cwiseAbs();
  std::sort(mags.data(), mags.data() + mags.size());
  PhysicalityReport rep{RVector(n), true};
  for (int k = 0; k < n; ++k) {
    rep.symplectic_eigenvalues[k] = mags[2 * k];
    if (mags[2 * k] < 0.5 - 1e-6) rep.physical = false;
  }
  return rep;
}

RMatrix symplectic_embedding(const CMatrix& u) {
  const int n = static_cast<int>(u.rows());
  const int m = static_cast<int>(u.cols());
  RMatrix s(2 * n, 2 * m);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < m; ++l) {
      const double re = u(k, l).real();
      const double im = u(k, l).imag();
      s(2 * k, 2 * l) = re;
      s(2 * k, 2 * l + 1) = -im;
      s(2 * k + 1, 2 * l) = im;
      s(2 * k + 1, 2 * l + 1) = re;
    }
  }
  return s;
}

CovarianceMatrix ideal_output_oracle(const NetworkUnitary& unitary, const CovarianceMatrix& bins) {
  const CMatrix& u = unitary.entries();
  if (!unitary.is_square()) throw ValidationError("the oracle needs a square unitary");
  const double dev = (u * u.adjoint() - CMatrix::Identity(u.rows(), u.rows())).cwiseAbs().maxCoeff();
  if (dev > 1e-10) throw ValidationError("network matrix is not unitary");
  if (unitary.n_in() != bins.modes()) throw UsageError("unitary size does not match the bin count");
  const RMatrix s = symplectic_embedding(u);
  const RMatrix out = s * bins.entries() * s.transpose();
  return CovarianceMatrix(0.5 * (out + out.transpose()));
}

}  // namespace qpgnet
