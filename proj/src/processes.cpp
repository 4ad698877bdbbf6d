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

#include "qpgnet/processes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "linalg.hpp"
#include "qpgnet/errors.hpp"

namespace qpgnet {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;

// sin(y)/y reaches 1/sqrt(2) at this y; converts an intensity FWHM to the
// first-zero distance of a sinc amplitude.
constexpr double kSincHalfPower = 1.3915573782515103;

double sinc_width_from_fwhm(double fwhm) { return fwhm * kPi / (2.0 * kSincHalfPower); }

// Linear interpolation on the pump grid. Points a hair outside the grid are
// clamped; callers check coverage first.
Complex interpolate(const SpectralFunction& f, double w) {
  const FrequencyGrid& g = f.grid;
  const double x = std::clamp((w - g.start()) / g.step(), 0.0, double(g.size() - 1));
  const int i = std::min(static_cast<int>(x), g.size() - 2);
  const double t = x - i;
  return (1.0 - t) * f.samples[i] + t * f.samples[i + 1];
}

void require_covers(const FrequencyGrid& pump, double lo, double hi) {
  if (!pump.contains(lo) || !pump.contains(hi)) {
    std::ostringstream msg;
    msg << "pump grid [" << pump.start() << ", " << pump.stop() << "] does not cover the required "
        << "range [" << lo << ", " << hi << "]";
    throw ConfigError(msg.str());
  }
}

void require_kind(const ProcessKernel& k, KernelKind kind, const char* what) {
  if (k.kind != kind) {
    throw UsageError(std::string(what) + (kind == KernelKind::jsa ? " needs a JSA" : " needs a TF"));
  }
}

// Hankel fill: value depends on i + j only, so symmetry and anti-diagonal
// uniformity hold bit for bit.
template <typename F>
CMatrix hankel(int n, F&& value_at_index_sum) {
  std::vector<Complex> v(2 * n - 1);
  for (int s = 0; s < 2 * n - 1; ++s) v[s] = value_at_index_sum(s);
  CMatrix out(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out(i, j) = v[i + j];
  return out;
}

}  // namespace

ProcessKernel::ProcessKernel(FrequencyGrid rows, FrequencyGrid cols, CMatrix v, KernelKind k)
    : grid_rows(std::move(rows)), grid_cols(std::move(cols)), values(std::move(v)), kind(k) {
  if (values.rows() != grid_rows.size() || values.cols() != grid_cols.size()) {
    throw UsageError("kernel shape does not match its grids");
  }
  if (!values.allFinite()) throw NumericalError("kernel has non-finite entries");
  if (kind == KernelKind::jsa) {
    if (!(grid_rows == grid_cols)) throw UsageError("JSA axes must share one grid");
    const double asym = (values - values.transpose()).norm();
    if (asym > 1e-10 * values.norm()) {
      std::ostringstream msg;
      msg << "JSA is not symmetric: ||K - K^T|| = " << asym << ", ||K|| = " << values.norm();
      throw ValidationError(msg.str());
    }
  }
}

double ProcessKernel::weight() const { return std::sqrt(grid_rows.step() * grid_cols.step()); }

CMatrix ProcessKernel::discretized() const { return values * weight(); }

void PhasematchingModel::validate() const {
  if (!(width > 0.0) || !std::isfinite(width)) throw ConfigError("phase-matching width must be positive");
  if (orientation == PmOrientation::horizontal) {
    if (peak_centers.empty()) throw ConfigError("horizontal phase matching needs peak centers");
    for (std::size_t m = 1; m < peak_centers.size(); ++m) {
      if (!(peak_centers[m] > peak_centers[m - 1])) {
        throw ConfigError("phase-matching peak centers must be strictly increasing");
      }
      if (peak_centers[m] - peak_centers[m - 1] < width) {
        throw ConfigError("phase-matching peaks overlap at the stated width");
      }
    }
  }
}

double PhasematchingModel::profile_value(double x) const {
  if (profile == PmProfile::gaussian) return std::exp(-2.0 * kLn2 * x * x / (width * width));
  const double y = kPi * x / width;
  return y == 0.0 ? 1.0 : std::sin(y) / y;
}

double PhasematchingModel::operator()(double w_first, double w_second) const {
  if (orientation == PmOrientation::antidiagonal) {
    return profile_value((w_first + w_second - 2.0 * center) / std::numbers::sqrt2);
  }
  double sum = 0.0;
  for (double c : peak_centers) sum += profile_value(w_second - c);
  return sum;
}

ProcessKernel build_type0_jsa(const FrequencyGrid& grid, double omega0, double fwhm,
                              PmProfile profile) {
  if (!(fwhm > 3.0 * grid.step())) {
    throw ResolutionError("JSA width " + std::to_string(fwhm) + " is not resolved by grid step " +
                          std::to_string(grid.step()));
  }
  if (!(2.0 * omega0 >= 2.0 * grid.start() && 2.0 * omega0 <= 2.0 * grid.stop())) {
    throw ConfigError("degeneracy point lies outside the sum-frequency range of the grid");
  }
  PhasematchingModel pm;
  pm.profile = profile;
  pm.width = profile == PmProfile::gaussian ? fwhm : sinc_width_from_fwhm(fwhm);
  pm.center = omega0;
  const double offset = 2.0 * (grid.start() - omega0);
  CMatrix values = hankel(grid.size(), [&](int s) {
    return Complex(pm.profile_value((offset + s * grid.step()) / std::numbers::sqrt2), 0.0);
  });
  return ProcessKernel(grid, grid, std::move(values), KernelKind::jsa);
}

ProcessKernel build_jsa_from_pump_pm(const SpectralFunction& pump, const PhasematchingModel& pm,
                                     const FrequencyGrid& grid) {
  pm.validate();
  if (pm.orientation != PmOrientation::antidiagonal) {
    throw UsageError("a PDC JSA needs anti-diagonal phase matching");
  }
  require_covers(pump.grid, 2.0 * grid.start(), 2.0 * grid.stop());
  const int n = grid.size();
  CMatrix values(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double wi = grid.at(i);
      const double wj = grid.at(j);
      values(i, j) = interpolate(pump, wi + wj) * pm(wi, wj);
    }
  }
  CMatrix sym = 0.5 * (values + values.transpose());
  return ProcessKernel(grid, grid, std::move(sym), KernelKind::jsa);
}

double mean_photon_number(const RVector& unit_coefficients, double scale) {
  double n = 0.0;
  for (double r : unit_coefficients) {
    const double s = std::sinh(scale * r);
    n += s * s;
  }
  return n;
}

double mean_photon_number(const ProcessKernel& jsa, double scale) {
  require_kind(jsa, KernelKind::jsa, "mean_photon_number");
  if (scale == 0.0) return 0.0;
  return mean_photon_number(linalg::takagi_values(jsa.discretized()), scale);
}

double photon_number_scale(const RVector& coeffs, double target) {
  if (!(target > 0.0) || !std::isfinite(target)) {
    throw ConfigError("target photon number must be positive");
  }
  const double r2 = coeffs.squaredNorm();
  if (!(r2 > 0.0)) throw NumericalError("cannot normalize a zero JSA");

  auto f = [&](double s) { return mean_photon_number(coeffs, s); };
  double lo = 0.0;
  double hi = std::sqrt(target / r2);  // exact in the low-gain limit, an upper bound otherwise
  int expansions = 0;
  while (f(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++expansions > 200 || !std::isfinite(f(hi))) {
      throw NumericalError("could not bracket the photon-number scale");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < target ? lo : hi) = mid;
  }
  const double s = std::abs(f(lo) - target) <= std::abs(f(hi) - target) ? lo : hi;
  if (std::abs(f(s) - target) > 1e-6 * target) {
    throw NumericalError("photon-number bisection did not converge");
  }
  return s;
}

NormalizedJsa normalize_jsa(const ProcessKernel& jsa, double target) {
  require_kind(jsa, KernelKind::jsa, "normalize_jsa");
  const double s = photon_number_scale(linalg::takagi_values(jsa.discretized()), target);
  return {ProcessKernel(jsa.grid_rows, jsa.grid_cols, jsa.values * s, KernelKind::jsa), s};
}

ProcessKernel build_mqpg_tf(const NetworkUnitary& unitary, const ModeSet& input_bins,
                            const ModeSet& output_peaks) {
  if (unitary.n_in() != input_bins.size() || unitary.n_out() != output_peaks.size()) {
    throw UsageError("network dimensions do not match the bin and peak counts");
  }
  for (const ModeSet* set : {&input_bins, &output_peaks}) {
    const double err = set->orthonormality_error();
    if (err > 1e-4) {
      std::ostringstream msg;
      msg << (set == &input_bins ? "input bins" : "output peaks")
          << " are not orthonormal (Gram deviation " << err << ")";
      throw ValidationError(msg.str());
    }
  }
  SeparableFactors f{input_bins.functions() * unitary.entries().transpose(),
                     output_peaks.functions()};
  ProcessKernel k(input_bins.grid, output_peaks.grid, f.left * f.right.transpose(), KernelKind::tf);
  k.factors = std::move(f);
  return k;
}

ProcessKernel build_tf_from_pump_pm(const SpectralFunction& pump, const PhasematchingModel& pm,
                                    const FrequencyGrid& grid_in, const FrequencyGrid& grid_out) {
  pm.validate();
  if (pm.orientation != PmOrientation::horizontal) {
    throw UsageError("an mQPG transfer function needs horizontal phase matching");
  }
  require_covers(pump.grid, grid_out.start() - grid_in.stop(), grid_out.stop() - grid_in.start());
  CMatrix values(grid_in.size(), grid_out.size());
  for (int j = 0; j < grid_out.size(); ++j) {
    const double wo = grid_out.at(j);
    const double peaks = pm(0.0, wo);
    for (int i = 0; i < grid_in.size(); ++i) {
      values(i, j) = peaks == 0.0 ? Complex(0.0) : interpolate(pump, wo - grid_in.at(i)) * peaks;
    }
  }
  return ProcessKernel(grid_in, grid_out, std::move(values), KernelKind::tf);
}

UnityConversion set_conversion_unity(const ProcessKernel& tf) {
  require_kind(tf, KernelKind::tf, "set_conversion_unity");
  const RVector sigma =
      tf.factors ? linalg::factored_svd(tf.factors->left, tf.factors->right, tf.weight()).s
                 : linalg::singular_values(tf.discretized());
  const double top = sigma.size() ? sigma[0] : 0.0;
  if (!(top > 0.0)) throw NumericalError("cannot set the conversion of a zero transfer function");
  const double scale = (kPi / 2.0) / top;

  UnityConversion out{ProcessKernel(tf.grid_rows, tf.grid_cols, tf.values * scale, KernelKind::tf),
                      {}, scale};
  if (tf.factors) out.kernel.factors = SeparableFactors{tf.factors->left * scale, tf.factors->right};
  for (double s : sigma) {
    if (s > 1e-8 * top) out.angles.push_back(s * scale);
  }
  return out;
}

}  // namespace qpgnet
