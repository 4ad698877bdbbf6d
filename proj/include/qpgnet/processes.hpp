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

#include <optional>
#include <vector>

#include "qpgnet/spectral.hpp"

namespace qpgnet {

enum class KernelKind { jsa, tf };

/// Separable representation values = left * right^T (columns are functions).
struct SeparableFactors {
  CMatrix left;
  CMatrix right;
};

/// Discretized two-argument kernel: the PDC joint spectral amplitude
/// f(w, w') (kind jsa, rows == cols) or the SFG transfer function
/// G(w_in, w_out) (kind tf, rows = input axis, cols = output axis).
struct ProcessKernel {
  ProcessKernel(FrequencyGrid rows, FrequencyGrid cols, CMatrix values, KernelKind kind);

  /// sqrt(step_rows * step_cols): converts kernel samples to operator matrices.
  double weight() const;
  /// Operator matrix acting on discrete vectors, values * weight().
  CMatrix discretized() const;

  FrequencyGrid grid_rows;
  FrequencyGrid grid_cols;
  CMatrix values;
  KernelKind kind;
  /// Set by build_mqpg_tf. The dense matrix stays authoritative.
  std::optional<SeparableFactors> factors;
};

enum class PmProfile { gaussian, sinc };
enum class PmOrientation { antidiagonal, horizontal };

/// Parametric phase-matching function.
///
/// antidiagonal: Phi(w, w') = p((w + w' - 2 center) / sqrt(2)), the PDC stripe.
/// horizontal:   Phi(w_in, w_out) = sum_m p(w_out - peak_m), independent of w_in
///               (group-velocity matched mQPG).
/// p has unit peak. Gaussian width is the intensity FWHM; sinc width is the
/// distance from the maximum to the first zero.
struct PhasematchingModel {
  PmProfile profile = PmProfile::gaussian;
  double width = 0.05;
  PmOrientation orientation = PmOrientation::antidiagonal;
  double center = 0.0;
  std::vector<double> peak_centers;

  void validate() const;
  double profile_value(double x) const;
  double operator()(double w_first, double w_second) const;
};

/// Symmetric type-0 JSA whose value depends only on w + w' - 2 omega0, with
/// cross-sectional FWHM `fwhm` perpendicular to the anti-diagonal.
ProcessKernel build_type0_jsa(const FrequencyGrid& grid, double omega0, double fwhm,
                              PmProfile profile = PmProfile::gaussian);

/// f(w, w') = P(w + w') Phi(w, w'), pump linearly interpolated, symmetrized.
ProcessKernel build_jsa_from_pump_pm(const SpectralFunction& pump, const PhasematchingModel& pm,
                                     const FrequencyGrid& grid);

/// Sum of sinh^2(r_k) over the Takagi coefficients r_k of scale * K * step.
double mean_photon_number(const ProcessKernel& jsa, double scale);

/// Same as mean_photon_number but from precomputed coefficients of K * step.
double mean_photon_number(const RVector& unit_coefficients, double scale);

struct NormalizedJsa {
  ProcessKernel kernel;
  double scale;
};

/// Scales the JSA so that mean_photon_number(kernel, 1) == target.
NormalizedJsa normalize_jsa(const ProcessKernel& jsa, double target_photons);

/// Root of mean_photon_number(coefficients, s) == target by bracketed bisection.
double photon_number_scale(const RVector& unit_coefficients, double target_photons);

/// G(w_in, w_out) = sum_m S_m(w_in) O_m(w_out) with S_m the superposition modes of U.
ProcessKernel build_mqpg_tf(const NetworkUnitary& unitary, const ModeSet& input_bins,
                            const ModeSet& output_peaks);

/// G(w_in, w_out) = P(w_out - w_in) sum_m O_m(w_out) from a horizontal PM model.
ProcessKernel build_tf_from_pump_pm(const SpectralFunction& pump, const PhasematchingModel& pm,
                                    const FrequencyGrid& grid_in, const FrequencyGrid& grid_out);

struct UnityConversion {
  ProcessKernel kernel;
  std::vector<double> angles;  // significant Schmidt angles, descending
  double scale;
};

/// Rescales a TF so its largest Schmidt angle is pi/2.
UnityConversion set_conversion_unity(const ProcessKernel& tf);

}  // namespace qpgnet
