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

#include "qpgnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qpgnet/errors.hpp"

namespace qpgnet {
namespace {

constexpr double kLn2 = std::numbers::ln2;

void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b, const char* what) {
  if (!(a == b)) {
    throw UsageError(std::string(what) + ": functions live on different grids");
  }
}

}  // namespace

FrequencyGrid::FrequencyGrid(double start, double stop, int n_points)
    : start_(start), stop_(stop), n_points_(n_points) {
  if (n_points < 2) {
    throw ConfigError("frequency grid needs at least 2 points, got " + std::to_string(n_points));
  }
  if (!std::isfinite(start) || !std::isfinite(stop) || !(stop > start)) {
    std::ostringstream msg;
    msg << "frequency grid needs stop > start, got [" << start << ", " << stop << "]";
    throw ConfigError(msg.str());
  }
}

RVector FrequencyGrid::points() const {
  RVector out(n_points_);
  for (int i = 0; i < n_points_; ++i) out[i] = at(i);
  return out;
}

bool FrequencyGrid::contains(double w, double tol) const {
  const double slack = tol * step();
  return w >= start_ - slack && w <= stop_ + slack;
}

FrequencyGrid make_grid(double start, double stop, int n_points) {
  return FrequencyGrid(start, stop, n_points);
}

SpectralFunction::SpectralFunction(FrequencyGrid g, CVector s, std::string l)
    : grid(std::move(g)), samples(std::move(s)), label(std::move(l)) {
  if (samples.size() != grid.size()) {
    throw UsageError("spectral function '" + label + "' has " + std::to_string(samples.size()) +
                     " samples on a grid of " + std::to_string(grid.size()));
  }
}

SpectralFunction SpectralFunction::from_discrete(const FrequencyGrid& grid, const CVector& discrete,
                                                 std::string label) {
  return SpectralFunction(grid, discrete / std::sqrt(grid.step()), std::move(label));
}

double SpectralFunction::norm() const { return samples.norm() * std::sqrt(grid.step()); }

CVector SpectralFunction::discrete() const { return samples * std::sqrt(grid.step()); }

bool SpectralFunction::is_normalized(double tol) const {
  return std::abs(inner_product(*this, *this).real() - 1.0) <= tol;
}

Complex inner_product(const SpectralFunction& f, const SpectralFunction& g) {
  require_same_grid(f.grid, g.grid, "inner_product");
  // Each partial sum is symmetric in (f, g), so swapping the arguments flips
  // the sign of the imaginary part exactly, even when FMA contraction is on.
  const Eigen::ArrayXd fr = f.samples.real(), fi = f.samples.imag();
  const Eigen::ArrayXd gr = g.samples.real(), gi = g.samples.imag();
  const double re = (fr * gr).sum() + (fi * gi).sum();
  const double im = (fr * gi).sum() - (fi * gr).sum();
  return Complex(re, im) * f.grid.step();
}

Complex bilinear_product(const SpectralFunction& f, const SpectralFunction& g) {
  require_same_grid(f.grid, g.grid, "bilinear_product");
  return (f.samples.array() * g.samples.array()).sum() * f.grid.step();
}

double bin_shape_value(const BinShape& shape, double offset) {
  switch (shape.profile) {
    case BinProfile::gaussian: {
      const double f = shape.width;
      const double prefactor = std::pow(4.0 * kLn2 / (std::numbers::pi * f * f), 0.25);
      return prefactor * std::exp(-2.0 * kLn2 * offset * offset / (f * f));
    }
    case BinProfile::box:
      return std::abs(offset) <= 0.5 * shape.width ? 1.0 / std::sqrt(shape.width) : 0.0;
  }
  return 0.0;
}

SpectralFunction gaussian_bin(const FrequencyGrid& grid, double center, double fwhm) {
  if (!grid.contains(center)) {
    throw ConfigError("gaussian bin center " + std::to_string(center) + " lies outside the grid");
  }
  if (!(fwhm > 3.0 * grid.step())) {
    throw ResolutionError("gaussian bin fwhm " + std::to_string(fwhm) +
                          " is not resolved by grid step " + std::to_string(grid.step()));
  }
  CVector samples(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const double x = grid.at(i) - center;
    samples[i] = std::exp(-2.0 * kLn2 * x * x / (fwhm * fwhm));
  }
  SpectralFunction out(grid, std::move(samples), "gaussian");
  out.samples /= out.norm();
  return out;
}

SpectralFunction box_bin(const FrequencyGrid& grid, double center, double width) {
  if (!(width >= 2.0 * grid.step() * (1.0 - 1e-12))) {
    throw ResolutionError("box width " + std::to_string(width) + " spans fewer than two grid steps");
  }
  const double lo = center - 0.5 * width;
  const double hi = center + 0.5 * width;
  if (!grid.contains(lo) || !grid.contains(hi)) {
    std::ostringstream msg;
    msg << "box [" << lo << ", " << hi << "] exceeds grid [" << grid.start() << ", " << grid.stop()
        << "]";
    throw ConfigError(msg.str());
  }
  const double slack = 1e-9 * grid.step();
  CVector samples = CVector::Zero(grid.size());
  int count = 0;
  for (int i = 0; i < grid.size(); ++i) {
    const double w = grid.at(i);
    if (w >= lo - slack && w <= hi + slack) {
      samples[i] = 1.0;
      ++count;
    }
  }
  samples /= std::sqrt(count * grid.step());
  return SpectralFunction(grid, std::move(samples), "box");
}

SpectralFunction make_bin(const FrequencyGrid& grid, double center, const BinShape& shape) {
  switch (shape.profile) {
    case BinProfile::gaussian:
      return gaussian_bin(grid, center, shape.width);
    case BinProfile::box:
      return box_bin(grid, center, shape.width);
  }
  throw UsageError("unknown bin profile");
}

ModeSet::ModeSet(FrequencyGrid g, std::vector<SpectralFunction> m, std::vector<double> c)
    : grid(std::move(g)), modes(std::move(m)), centers(std::move(c)) {
  if (centers.size() != modes.size()) {
    throw UsageError("mode set has " + std::to_string(modes.size()) + " modes but " +
                     std::to_string(centers.size()) + " centers");
  }
  for (const auto& mode : modes) require_same_grid(grid, mode.grid, "ModeSet");
}

CMatrix ModeSet::functions() const {
  CMatrix out(grid.size(), size());
  for (int k = 0; k < size(); ++k) out.col(k) = modes[k].samples;
  return out;
}

CMatrix ModeSet::discrete() const { return functions() * std::sqrt(grid.step()); }

CMatrix ModeSet::gram() const {
  const CMatrix d = discrete();
  return d.adjoint() * d;
}

double ModeSet::orthonormality_error() const {
  if (modes.empty()) return 0.0;
  const CMatrix g = gram();
  return (g - CMatrix::Identity(size(), size())).cwiseAbs().maxCoeff();
}

ModeSet make_modes(const FrequencyGrid& grid, const std::vector<double>& centers,
                   const BinShape& shape) {
  std::vector<SpectralFunction> modes;
  modes.reserve(centers.size());
  for (std::size_t k = 0; k < centers.size(); ++k) {
    modes.push_back(make_bin(grid, centers[k], shape));
    modes.back().label = "bin" + std::to_string(k + 1);
  }
  return ModeSet(grid, std::move(modes), centers);
}

ModeSet orthonormalize_symmetric(const ModeSet& set) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(set.gram());
  const RVector lambda = eig.eigenvalues();
  if (lambda.size() > 0 && lambda.minCoeff() <= 1e-12 * lambda.maxCoeff()) {
    throw ValidationError("modes are linearly dependent; cannot orthonormalize");
  }
  const CMatrix inv_sqrt = eig.eigenvectors() * lambda.cwiseInverse().cwiseSqrt().asDiagonal() *
                           eig.eigenvectors().adjoint();
  const CMatrix d = set.discrete() * inv_sqrt;
  std::vector<SpectralFunction> modes;
  for (int k = 0; k < set.size(); ++k) {
    modes.push_back(SpectralFunction::from_discrete(set.grid, d.col(k), set.modes[k].label));
  }
  return ModeSet(set.grid, std::move(modes), set.centers);
}

BinPlacement place_bins(int n, const FrequencyGrid& grid, double omega0, double width,
                        BinProfile profile) {
  if (n < 1) throw ConfigError("place_bins needs n >= 1, got " + std::to_string(n));
  if (!(width > 0.0)) throw ConfigError("place_bins needs a positive width");
  if (!grid.contains(omega0)) throw ConfigError("degeneracy point lies outside the grid");

  const double half = std::min(omega0 - grid.start(), grid.stop() - omega0);
  const double usable = 2.0 * half;
  BinPlacement out;
  if (n == 1) {
    out.centers = {omega0};
    out.feasible = width <= usable * (1.0 + 1e-12);
  } else {
    out.spacing = (usable - width) / (n - 1);
    for (int k = 0; k < n; ++k) {
      // Mirror pairs are computed from both ends so the reflection is exact.
      const double offset = -half + 0.5 * width + k * out.spacing;
      out.centers.push_back(omega0 + offset);
    }
    for (int k = 0; k < n / 2; ++k) {
      const double d = 0.5 * (out.centers[n - 1 - k] - out.centers[k]);
      out.centers[k] = omega0 - d;
      out.centers[n - 1 - k] = omega0 + d;
    }
    if (n % 2 == 1) out.centers[n / 2] = omega0;
    out.feasible = n * width <= usable * (1.0 + 1e-12);
  }
  if (out.feasible) {
    out.bins = make_modes(grid, out.centers, BinShape{profile, width});
  }
  return out;
}

NetworkUnitary::NetworkUnitary(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.cols() == 0) {
    throw ValidationError("network matrix must be non-empty");
  }
  for (int m = 0; m < entries_.rows(); ++m) {
    const double norm = entries_.row(m).norm();
    if (std::abs(norm - 1.0) > 1e-10) {
      throw ValidationError("network row " + std::to_string(m) + " has norm " +
                            std::to_string(norm) + ", expected 1");
    }
  }
  if (entries_.rows() <= entries_.cols()) {
    const CMatrix g = entries_ * entries_.adjoint();
    const double dev = (g - CMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
      throw ValidationError("network rows are not orthonormal (deviation " + std::to_string(dev) +
                            ")");
    }
  }
}

NetworkUnitary NetworkUnitary::identity(int n) {
  return NetworkUnitary(CMatrix::Identity(n, n));
}

NetworkUnitary NetworkUnitary::balanced_beamsplitter() {
  CMatrix u(2, 2);
  u << 1.0, 1.0, 1.0, -1.0;
  return NetworkUnitary(u / std::sqrt(2.0));
}

NetworkUnitary NetworkUnitary::random(int n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("random unitary needs n >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) z(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0);
  }
  return NetworkUnitary(q);
}

CVector phase_pattern_row(PhasePattern pattern, int n) {
  if (n < 1) throw ConfigError("phase pattern needs n >= 1");
  CVector row(n);
  for (int l = 0; l < n; ++l) {
    const double sign = (pattern == PhasePattern::alternating && l % 2 == 1) ? -1.0 : 1.0;
    row[l] = sign / std::sqrt(static_cast<double>(n));
  }
  return row;
}

SpectralFunction superposition_mode(const CVector& row, const ModeSet& bins) {
  if (row.size() != bins.size()) {
    throw UsageError("superposition row has " + std::to_string(row.size()) + " entries for " +
                     std::to_string(bins.size()) + " bins");
  }
  CVector samples = bins.functions() * row;
  return SpectralFunction(bins.grid, std::move(samples), "superposition");
}

SpectralFunction synthesize_pump(const NetworkUnitary& unitary, const std::vector<double>& in_centers,
                                 const std::vector<double>& out_centers, const BinShape& bin_shape,
                                 const FrequencyGrid& pump_grid) {
  if (static_cast<int>(in_centers.size()) != unitary.n_in() ||
      static_cast<int>(out_centers.size()) != unitary.n_out()) {
    throw UsageError("pump synthesis: center lists do not match the network dimensions");
  }
  if (bin_shape.profile == BinProfile::gaussian && !(bin_shape.width > 3.0 * pump_grid.step())) {
    throw ResolutionError("pump bin width is not resolved by the pump grid");
  }
  if (bin_shape.profile == BinProfile::box && !(bin_shape.width >= 2.0 * pump_grid.step())) {
    throw ResolutionError("pump box width spans fewer than two pump grid steps");
  }
  CVector samples = CVector::Zero(pump_grid.size());
  for (int m = 0; m < unitary.n_out(); ++m) {
    for (int l = 0; l < unitary.n_in(); ++l) {
      const double center = out_centers[m] - in_centers[l];
      if (!pump_grid.contains(center)) {
        std::ostringstream msg;
        msg << "pump bin (" << m << ", " << l << ") at " << center << " lies outside the pump grid";
        throw ConfigError(msg.str());
      }
      const Complex weight = unitary.entries()(m, l);
      for (int i = 0; i < pump_grid.size(); ++i) {
        samples[i] += weight * bin_shape_value(bin_shape, pump_grid.at(i) - center);
      }
    }
  }
  return SpectralFunction(pump_grid, std::move(samples), "pump");
}

}  // namespace qpgnet
