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

#include "qpgnet/bogoliubov.hpp"
#include "qpgnet/spectral.hpp"

namespace qpgnet {

/// Amplitude functions of the output-mode operators, stored as discrete
/// columns (one per output mode):
///   O''_k = int H1_k b + int H2_k a + int H3_k a^dagger
/// with b the SFG output-band vacuum and a the PDC input-band vacuum.
struct CompositeAmplitudes {
  FrequencyGrid grid_in;
  FrequencyGrid grid_out;
  CMatrix h1;  // grid_out rows
  CMatrix h2;  // grid_in rows
  CMatrix h3;  // grid_in rows

  int modes() const { return static_cast<int>(h2.cols()); }
  SpectralFunction h1_function(int k) const;
  SpectralFunction h2_function(int k) const;
  SpectralFunction h3_function(int k) const;
  /// |H1_k|^2 + |H2_k|^2 - |H3_k|^2 - 1 per mode.
  RVector commutator_residuals() const;
};

CompositeAmplitudes compose(const PDCKernels& pdc, const SFGKernels& sfg, const ModeSet& outputs);

/// Quadrature covariance in (X1, Y1, X2, Y2, ...) ordering, vacuum = I/2.
class CovarianceMatrix {
 public:
  /// Throws ValidationError unless square with even size and symmetric
  /// within 1e-10; stores the exactly symmetrized matrix.
  explicit CovarianceMatrix(const RMatrix& entries);

  static CovarianceMatrix vacuum(int modes);

  const RMatrix& entries() const { return entries_; }
  int modes() const { return static_cast<int>(entries_.rows() / 2); }
  double operator()(int i, int j) const { return entries_(i, j); }
  Eigen::Matrix2d block(int k, int l) const { return entries_.block<2, 2>(2 * k, 2 * l); }

 private:
  RMatrix entries_;
};

CovarianceMatrix covariance_from_amplitudes(const CompositeAmplitudes& amps);

/// Covariance of the PDC state projected onto the given bins.
CovarianceMatrix pdc_bin_covariance(const PDCKernels& pdc, const ModeSet& bins);

struct Purity {
  double value;         // min(raw, 1)
  double raw;           // 1 / (2^N sqrt(det sigma))
  bool exceeds_unity;   // raw > 1 + 1e-6
};

Purity purity(const CovarianceMatrix& sigma);

/// -10 log10(2 a) with a the smallest ordinary eigenvalue.
double squeezing_db(const CovarianceMatrix& sigma);

struct PhysicalityReport {
  RVector symplectic_eigenvalues;  // ascending
  bool physical;

  double min() const { return symplectic_eigenvalues.minCoeff(); }
};

PhysicalityReport check_physical(const CovarianceMatrix& sigma);

/// Real 2N x 2N form of a complex N x N mode transform in (X, Y) ordering.
RMatrix symplectic_embedding(const CMatrix& u);

/// S_U sigma S_U^T: the output covariance of an ideal unity-conversion network.
CovarianceMatrix ideal_output_oracle(const NetworkUnitary& unitary, const CovarianceMatrix& bins);

}  // namespace qpgnet
