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

#include "qpgnet/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "linalg.hpp"
#include "qpgnet/errors.hpp"

namespace qpgnet {
namespace {

// Modes whose coefficient is this far below the largest one change no entry
// of the assembled kernels at double precision.
constexpr double kNegligible = 1e-15;

int significant_count(const RVector& r, double rel) {
  if (r.size() == 0 || !(r[0] > 0.0)) return 0;
  int m = 0;
  while (m < r.size() && r[m] > rel * r[0]) ++m;
  return m;
}

SchmidtData sorted(const RVector& r, const CMatrix& phi) {
  std::vector<int> order(r.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return r[a] > r[b]; });
  SchmidtData out;
  out.coefficients.resize(r.size());
  out.input_modes.resize(phi.rows(), phi.cols());
  for (int k = 0; k < static_cast<int>(order.size()); ++k) {
    out.coefficients[k] = r[order[k]];
    out.input_modes.col(k) = phi.col(order[k]);
  }
  out.output_modes = out.input_modes;
  return out;
}

SchmidtData takagi_real(const RMatrix& k) {
  const auto eig = linalg::symmetric_eigen(k);
  const int n = static_cast<int>(k.rows());
  RVector r(n);
  CMatrix phi(n, n);
  for (int j = 0; j < n; ++j) {
    const double lambda = eig.values[j];
    r[j] = std::abs(lambda);
    // W column is o or i*o; phi = conj(W).
    if (lambda >= 0.0) {
      phi.col(j) = eig.vectors.col(j).cast<Complex>();
    } else {
      phi.col(j) = eig.vectors.col(j).cast<Complex>() * Complex(0.0, -1.0);
    }
  }
  return sorted(r, phi);
}

SchmidtData takagi_complex(const CMatrix& k) {
  const int n = static_cast<int>(k.rows());
  RMatrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = k.real();
  m.topRightCorner(n, n) = k.imag();
  m.bottomLeftCorner(n, n) = k.imag();
  m.bottomRightCorner(n, n) = -k.real();
  const auto eig = linalg::symmetric_eigen(std::move(m));

  const double top = eig.values.cwiseAbs().maxCoeff();
  const double tau = 64.0 * n * std::numeric_limits<double>::epsilon() * top;
  std::vector<int> keep;
  for (int j = 2 * n - 1; j >= 0 && eig.values[j] > tau; --j) keep.push_back(j);
  const int rank = static_cast<int>(keep.size());
  if (rank > n) throw NumericalError("Takagi embedding produced too many positive eigenvalues");

  CMatrix w(n, n);
  RVector r = RVector::Zero(n);
  for (int c = 0; c < rank; ++c) {
    const int j = keep[c];
    r[c] = eig.values[j];
    w.col(c) = eig.vectors.col(j).head(n).cast<Complex>() +
               Complex(0.0, 1.0) * eig.vectors.col(j).tail(n).cast<Complex>();
  }
  if (rank < n) {
    // Null-space modes: any orthonormal complement of the range.
    Eigen::HouseholderQR<CMatrix> qr(w.leftCols(rank));
    const CMatrix q = qr.householderQ();
    w.rightCols(n - rank) = q.rightCols(n - rank);
  }
  return sorted(r, w.conjugate());
}

void check_reconstruction(const CMatrix& k, const SchmidtData& d) {
  const int m = significant_count(d.coefficients, kNegligible);
  const auto w = d.input_modes.leftCols(m).conjugate();
  const CMatrix rebuilt = w * d.coefficients.head(m).asDiagonal() * w.transpose();
  const double err = (k - rebuilt).norm();
  if (err > 1e-8 * std::max(k.norm(), std::numeric_limits<double>::min())) {
    std::ostringstream msg;
    msg << "Takagi reconstruction failed: relative residual " << err / k.norm();
    throw NumericalError(msg.str());
  }
}

void add_residual(CommutationReport& rep, std::string name, const CMatrix& m) {
  rep.residuals.emplace_back(std::move(name), m.norm());
}

}  // namespace

SpectralFunction mode_function(const CMatrix& modes, int k, const FrequencyGrid& grid) {
  if (k < 0 || k >= modes.cols()) throw UsageError("mode index out of range");
  return SpectralFunction::from_discrete(grid, modes.col(k), "mode " + std::to_string(k));
}

SchmidtData takagi(const CMatrix& k_in) {
  if (k_in.rows() != k_in.cols()) throw UsageError("takagi needs a square matrix");
  if (!k_in.allFinite()) throw NumericalError("takagi input has non-finite entries");
  const double norm = k_in.norm();
  const double asym = (k_in - k_in.transpose()).norm();
  if (asym > 1e-8 * norm) {
    std::ostringstream msg;
    msg << "matrix is not symmetric: ||K - K^T|| / ||K|| = " << asym / norm;
    throw ValidationError(msg.str());
  }
  const int n = static_cast<int>(k_in.rows());
  if (norm == 0.0) {
    SchmidtData zero{RVector::Zero(n), CMatrix::Identity(n, n), CMatrix::Identity(n, n)};
    return zero;
  }
  const CMatrix k = 0.5 * (k_in + k_in.transpose());
  SchmidtData out = linalg::is_real(k) ? takagi_real(k.real()) : takagi_complex(k);
  check_reconstruction(k, out);
  return out;
}

SchmidtData takagi(const ProcessKernel& jsa, double scale) {
  if (jsa.kind != KernelKind::jsa) throw UsageError("takagi needs a JSA kernel");
  return takagi(jsa.discretized() * scale);
}

SchmidtData svd_schmidt(const CMatrix& k) {
  if (!k.allFinite()) throw NumericalError("svd_schmidt input has non-finite entries");
  auto svd = linalg::thin_svd(k);
  return {std::move(svd.s), -svd.u, std::move(svd.v)};
}

SchmidtData svd_schmidt(const ProcessKernel& kernel) {
  if (!kernel.factors) return svd_schmidt(kernel.discretized());
  auto svd = linalg::factored_svd(kernel.factors->left, kernel.factors->right, kernel.weight());
  return {std::move(svd.s), -svd.u, std::move(svd.v)};
}

PDCKernels pdc_kernels(const SchmidtData& unit, double scale, const FrequencyGrid& grid,
                       const PdcOptions& options) {
  const int n = grid.size();
  if (unit.input_modes.rows() != n) throw UsageError("Schmidt data does not match the grid");
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw ConfigError("PDC scale must be nonnegative");

  SchmidtData scaled = unit;
  scaled.coefficients *= scale;
  int m = significant_count(scaled.coefficients, std::max(options.cutoff, kNegligible));
  if (options.max_modes >= 0) m = std::min(m, options.max_modes);

  const auto w = scaled.input_modes.leftCols(m).conjugate();
  const RVector& r = scaled.coefficients;
  RVector ch(m), sh(m);
  for (int k = 0; k < m; ++k) {
    // cosh(r) - 1 = 2 sinh^2(r/2) avoids cancellation for small r.
    const double h = std::sinh(0.5 * r[k]);
    ch[k] = options.complete ? 2.0 * h * h : std::cosh(r[k]);
    sh[k] = std::sinh(r[k]);
  }
  CMatrix u = w * ch.asDiagonal() * w.adjoint();
  if (options.complete) u.diagonal().array() += 1.0;
  CMatrix v = w * sh.asDiagonal() * w.transpose();
  return {grid, std::move(u), std::move(v), std::move(scaled)};
}

PDCKernels pdc_kernels(const ProcessKernel& jsa, double scale, const PdcOptions& options) {
  if (jsa.kind != KernelKind::jsa) throw UsageError("pdc_kernels needs a JSA kernel");
  return pdc_kernels(takagi(jsa, 1.0), scale, jsa.grid_rows, options);
}

SFGKernels sfg_kernels(const ProcessKernel& tf) {
  if (tf.kind != KernelKind::tf) throw UsageError("sfg_kernels needs a TF kernel");
  SchmidtData d = svd_schmidt(tf);
  const int n_in = tf.grid_rows.size();
  const int n_out = tf.grid_cols.size();
  const int m = significant_count(d.coefficients, kNegligible);

  bool over = false;
  RVector c1(m), s(m);
  for (int k = 0; k < m; ++k) {
    const double theta = d.coefficients[k];
    over = over || theta > std::numbers::pi / 2 + 1e-6;
    const double h = std::sin(0.5 * theta);
    c1[k] = -2.0 * h * h;  // cos(theta) - 1
    s[k] = std::sin(theta);
  }
  const CMatrix phi = d.input_modes.leftCols(m);
  const CMatrix psi = d.output_modes.leftCols(m);
  const CMatrix phi_c = phi.conjugate();
  const CMatrix psi_c = psi.conjugate();

  SFGKernels out{tf.grid_rows, tf.grid_cols, {}, {}, {}, {}, std::move(d), over};
  out.ub = phi_c * c1.asDiagonal() * phi.transpose();
  out.ub.diagonal().array() += 1.0;
  out.vb = phi_c * s.asDiagonal() * psi.transpose();
  out.ua = psi_c * c1.asDiagonal() * psi.transpose();
  out.ua.diagonal().array() += 1.0;
  out.va = psi_c * s.asDiagonal() * phi.transpose();
  if (out.ub.rows() != n_in || out.ua.rows() != n_out) throw NumericalError("SFG kernel shape mismatch");
  return out;
}

double CommutationReport::max_residual() const {
  double m = 0.0;
  for (const auto& [name, value] : residuals) m = std::max(m, value);
  return m;
}

CommutationReport check_commutation(const PDCKernels& k) {
  CommutationReport rep;
  const CMatrix id = CMatrix::Identity(k.u.rows(), k.u.cols());
  add_residual(rep, "U U^H - V V^H - I", k.u * k.u.adjoint() - k.v * k.v.adjoint() - id);
  const CMatrix uvt = k.u * k.v.transpose();
  add_residual(rep, "U V^T - (U V^T)^T", uvt - uvt.transpose());
  return rep;
}

CommutationReport check_commutation(const SFGKernels& k) {
  CommutationReport rep;
  const CMatrix id_out = CMatrix::Identity(k.ua.rows(), k.ua.rows());
  const CMatrix id_in = CMatrix::Identity(k.ub.rows(), k.ub.rows());
  add_residual(rep, "Ua Ua^H + Va Va^H - I", k.ua * k.ua.adjoint() + k.va * k.va.adjoint() - id_out);
  add_residual(rep, "Ub^H Ub + Va^H Va - I", k.ub.adjoint() * k.ub + k.va.adjoint() * k.va - id_in);
  add_residual(rep, "Ub Va^H - Vb Ua^H", k.ub * k.va.adjoint() - k.vb * k.ua.adjoint());
  return rep;
}

}  // namespace qpgnet
