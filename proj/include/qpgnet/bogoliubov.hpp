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

#include <string>
#include <utility>
#include <vector>

#include "qpgnet/processes.hpp"
#include "qpgnet/spectral.hpp"

namespace qpgnet {

/// Schmidt or Takagi data of a discretized kernel. Mode columns are discrete
/// (unit-norm) vectors; use mode_function to get L2-normalized functions.
///
/// JSA (takagi):   K = conj(Phi) diag(r) conj(Phi)^T, output_modes == input_modes.
/// TF (svd_schmidt): K = -Phi diag(r) Psi^H.
struct SchmidtData {
  RVector coefficients;  // nonnegative, descending
  CMatrix input_modes;   // phi_k on the row grid
  CMatrix output_modes;  // psi_k on the column grid

  int size() const { return static_cast<int>(coefficients.size()); }
};

SpectralFunction mode_function(const CMatrix& modes, int k, const FrequencyGrid& grid);

/// Autonne-Takagi factorization of a complex symmetric matrix. Real matrices
/// use a symmetric eigendecomposition; complex ones the eigenvectors of the
/// real 2n x 2n embedding [[Re K, Im K], [Im K, -Re K]], which is immune to
/// degenerate singular values.
SchmidtData takagi(const CMatrix& symmetric);
SchmidtData takagi(const ProcessKernel& jsa, double scale = 1.0);

SchmidtData svd_schmidt(const CMatrix& kernel);
SchmidtData svd_schmidt(const ProcessKernel& kernel);

struct PdcOptions {
  /// Drop modes with r_k < cutoff * r_max.
  double cutoff = 0.0;
  /// Keep at most this many modes (negative keeps all).
  int max_modes = -1;
  /// Dropped modes pass through as identity. With false, U^P is the bare
  /// Schmidt sum over kept modes, which breaks the commutator.
  bool complete = true;
};

struct PDCKernels {
  FrequencyGrid grid;
  CMatrix u;  // discrete U^P
  CMatrix v;  // discrete V^P
  SchmidtData schmidt;  // unit-scale Takagi data; coefficients here are scaled
};

PDCKernels pdc_kernels(const ProcessKernel& jsa, double scale, const PdcOptions& options = {});

/// Reuses a decomposition of the unit-scale gain matrix K * step.
PDCKernels pdc_kernels(const SchmidtData& unit, double scale, const FrequencyGrid& grid,
                       const PdcOptions& options = {});

struct SFGKernels {
  FrequencyGrid grid_in;
  FrequencyGrid grid_out;
  CMatrix ua;  // out x out
  CMatrix va;  // out x in
  CMatrix ub;  // in x in
  CMatrix vb;  // in x out
  SchmidtData schmidt;  // coefficients are the conversion angles
  bool over_conversion = false;
};

SFGKernels sfg_kernels(const ProcessKernel& tf);

struct CommutationReport {
  std::vector<std::pair<std::string, double>> residuals;  // Frobenius norms

  double max_residual() const;
  bool passed(double tol = 1e-6) const { return max_residual() <= tol; }
};

CommutationReport check_commutation(const PDCKernels& kernels);
CommutationReport check_commutation(const SFGKernels& kernels);

}  // namespace qpgnet
