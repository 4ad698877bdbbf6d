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

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qpgnet {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Uniform sampling of an angular-frequency window, endpoints included.
class FrequencyGrid {
 public:
  /// Throws ConfigError unless n_points >= 2 and stop > start.
  FrequencyGrid(double start, double stop, int n_points);

  double start() const { return start_; }
  double stop() const { return stop_; }
  int size() const { return n_points_; }
  double step() const { return (stop_ - start_) / (n_points_ - 1); }
  double span() const { return stop_ - start_; }
  double at(int i) const { return start_ + i * step(); }
  RVector points() const;

  /// True if w lies in [start - tol*step, stop + tol*step].
  bool contains(double w, double tol = 1e-9) const;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

 private:
  double start_;
  double stop_;
  int n_points_;
};

FrequencyGrid make_grid(double start, double stop, int n_points);

/// Complex amplitude samples F(w_i) on a grid.
///
/// Two representations are used throughout the library: the function samples
/// stored here, and the "discrete" vector samples * sqrt(step). A function
/// with unit L2 norm under the Riemann rule has a unit-norm discrete vector,
/// and kernel matrices multiplied by the step act on discrete vectors as
/// ordinary matrices.
struct SpectralFunction {
  SpectralFunction(FrequencyGrid grid, CVector samples, std::string label = {});

  static SpectralFunction from_discrete(const FrequencyGrid& grid,
                                        const CVector& discrete,
                                        std::string label = {});

  double norm() const;
  CVector discrete() const;
  bool is_normalized(double tol = 1e-9) const;

  FrequencyGrid grid;
  CVector samples;
  std::string label;
};

/// Riemann sum of conj(f) g with uniform weight step.
Complex inner_product(const SpectralFunction& f, const SpectralFunction& g);

/// Riemann sum of f g (no conjugation).
Complex bilinear_product(const SpectralFunction& f, const SpectralFunction& g);

enum class BinProfile { gaussian, box };

/// Width is the intensity FWHM for gaussian bins and the full width D for boxes.
struct BinShape {
  BinProfile profile = BinProfile::gaussian;
  double width = 0.1;
};

/// Continuum-normalized shape centered at zero, evaluated at `offset`.
double bin_shape_value(const BinShape& shape, double offset);

/// Real Gaussian with intensity FWHM `fwhm`, normalized on the grid.
/// The amplitude is exp(-2 ln2 (w - center)^2 / fwhm^2), so |A|^2 has standard
/// deviation fwhm / sqrt(8 ln 2).
SpectralFunction gaussian_bin(const FrequencyGrid& grid, double center, double fwhm);

/// Constant amplitude on the closed interval [center - width/2, center + width/2].
SpectralFunction box_bin(const FrequencyGrid& grid, double center, double width);

SpectralFunction make_bin(const FrequencyGrid& grid, double center, const BinShape& shape);

/// Ordered set of modes sharing one grid.
struct ModeSet {
  ModeSet(FrequencyGrid grid, std::vector<SpectralFunction> modes, std::vector<double> centers);

  int size() const { return static_cast<int>(modes.size()); }
  CMatrix functions() const;  // columns are function samples
  CMatrix discrete() const;   // columns are discrete vectors
  CMatrix gram() const;
  /// Largest entry of |Gram - I|.
  double orthonormality_error() const;

  FrequencyGrid grid;
  std::vector<SpectralFunction> modes;
  std::vector<double> centers;
};

ModeSet make_modes(const FrequencyGrid& grid, const std::vector<double>& centers,
                   const BinShape& shape);

/// Symmetric (Loewdin) orthonormalization G^{-1/2}; keeps centers and labels.
ModeSet orthonormalize_symmetric(const ModeSet& modes);

struct BinPlacement {
  bool feasible = false;
  std::vector<double> centers;
  double spacing = 0.0;
  std::optional<ModeSet> bins;  // empty when infeasible
};

/// Places n bins symmetrically about omega0 with the outermost edges flush
/// against the window (or the nearer window edge when omega0 is off-center).
/// Neighboring bins that would overlap yield feasible == false.
BinPlacement place_bins(int n, const FrequencyGrid& grid, double omega0, double width,
                        BinProfile profile = BinProfile::box);

/// Programmable interferometer matrix U_{ml}: N_out rows, N_in columns.
class NetworkUnitary {
 public:
  /// Rows must have unit norm; for N_out <= N_in the rows must be orthonormal.
  explicit NetworkUnitary(CMatrix entries);

  static NetworkUnitary identity(int n);
  static NetworkUnitary balanced_beamsplitter();
  /// Haar-random square unitary from a seeded generator.
  static NetworkUnitary random(int n, std::uint64_t seed);

  const CMatrix& entries() const { return entries_; }
  int n_out() const { return static_cast<int>(entries_.rows()); }
  int n_in() const { return static_cast<int>(entries_.cols()); }
  bool is_square() const { return n_in() == n_out(); }
  CVector row(int m) const { return entries_.row(m).transpose(); }

 private:
  CMatrix entries_;
};

enum class PhasePattern { equal, alternating };

/// (1, ..., 1)/sqrt(n) or (1, -1, 1, ...)/sqrt(n).
CVector phase_pattern_row(PhasePattern pattern, int n);

/// S_k = sum_l row_l A_l.
SpectralFunction superposition_mode(const CVector& row, const ModeSet& bins);

/// P(w_P) = sum_{m,l} U_ml B(w_P - (out_m - in_l)) with B the continuum-normalized
/// bin shape. Overlapping components add coherently.
SpectralFunction synthesize_pump(const NetworkUnitary& unitary,
                                 const std::vector<double>& in_centers,
                                 const std::vector<double>& out_centers,
                                 const BinShape& bin_shape,
                                 const FrequencyGrid& pump_grid);

}  // namespace qpgnet
