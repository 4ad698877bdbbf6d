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
#include <string>
#include <vector>

#include "qpgnet/bogoliubov.hpp"
#include "qpgnet/network.hpp"
#include "qpgnet/processes.hpp"
#include "qpgnet/spectral.hpp"

namespace qpgnet {

// All frequencies below are in units of the input window, which is [0, 1]
// with the degeneracy point at 0.5. The output window is also [0, 1].

struct PointMetrics {
  double purity = 0.0;
  double squeezing_db = 0.0;
  double symplectic_min = 0.0;
  bool physical = false;
  bool purity_exceeds_unity = false;
};

PointMetrics evaluate_metrics(const CovarianceMatrix& sigma);

/// n_out Gaussian output peaks at (m + 1/2) / n_out of the window with
/// FWHM equal to a fifth of their spacing.
ModeSet output_peaks(const FrequencyGrid& grid, int n_out);

struct DemoConfig {
  int grid_n = 1500;
  double fwhm_jsa = 0.05;
  double fwhm_bin = 0.1;
  double mean_photons = 1.0;
  /// Input bin centers; default is the symmetric pair 0.25, 0.75.
  std::vector<double> bin_centers{0.25, 0.75};
  /// Network matrix; default is the balanced beamsplitter.
  std::optional<NetworkUnitary> unitary;
  bool check_commutation = true;
};

struct DemoResult {
  ProcessKernel jsa;  // normalized
  ProcessKernel tf;   // unity conversion
  double jsa_scale = 0.0;
  std::vector<double> conversion_angles;
  ModeSet input_bins;
  ModeSet outputs;
  CovarianceMatrix sigma_pdc;
  CovarianceMatrix sigma_out;
  CovarianceMatrix sigma_oracle;
  PointMetrics metrics_pdc;
  PointMetrics metrics_out;
  std::optional<CommutationReport> pdc_commutation;
  std::optional<CommutationReport> sfg_commutation;
  RVector amplitude_residuals;
};

/// Full PDC + mQPG pipeline for a small frequency-bin network.
DemoResult run_beamsplitter_demo(const DemoConfig& config = {});

struct ScanAxis {
  std::string name;
  std::vector<double> values;
};

struct ScanRecord {
  std::vector<double> coords;  // one value per axis
  bool feasible = false;
  PointMetrics metrics;        // meaningful only when feasible and error is empty
  std::string error;
};

/// Records are row-major over the axes (the last axis varies fastest).
struct ScanResult {
  std::string label;
  std::vector<ScanAxis> axes;
  std::vector<ScanRecord> records;
};

struct BinWidthScanConfig {
  std::vector<double> widths;  // bin FWHM
  std::vector<double> mean_photons{0.25, 1.0, 2.0};
  int grid_n = 800;
  double fwhm_jsa = 0.05;
  /// Bins sit at 0.5 -/+ bin_offset.
  double bin_offset = 0.25;
  int threads = 0;  // 0 uses all cores
};

/// 30 widths from just above the grid resolution to 0.15.
std::vector<double> default_bin_widths(int grid_n, int count = 30);

/// Single even-output mQPG on a symmetric bin pair, axes (mean_photons, width).
ScanResult scan_bin_width(const BinWidthScanConfig& config);

struct NetworkScanConfig {
  std::vector<int> n_bins;       // default 2..20
  std::vector<double> widths;    // default 30 values of D
  PhasePattern pattern = PhasePattern::equal;
  std::vector<double> fwhm_jsa_list{0.05, 0.02, 0.01};
  double mean_photons = 2.0;
  int grid_n = 600;
  BinProfile profile = BinProfile::box;
  int threads = 0;
};

std::vector<int> default_bin_counts();
std::vector<double> default_box_widths(int count = 30);

/// Single-output mQPG over n bins from place_bins, axes (fwhm_jsa, n_bins, width).
ScanResult scan_network_size(const NetworkScanConfig& config);

struct HardwareBudget {
  double input_bandwidth = 5.0;  // PDC range
  double pump_bandwidth = 4.0;   // mQPG pump bandwidth
  int n_out = 1;
  double pdc_resolution = 0.01;   // PDC phase-matching width
  double mqpg_resolution = 0.02;  // mQPG phase-matching width

  void validate() const;
};

/// floor(min(input, pump / n_out) / max(pdc_res, mqpg_res)).
long long estimate_n_in(const HardwareBudget& budget);

struct NinHeatmap {
  std::vector<double> bandwidths;   // rows: available bandwidth
  std::vector<double> resolutions;  // columns: phase-matching width
  RMatrix values;
};

/// N_in over a bandwidth x phase-matching-width grid (one output, equal limits).
NinHeatmap estimate_n_in_heatmap(const std::vector<double>& bandwidths,
                                 const std::vector<double>& resolutions);

/// Evenly spaced values, endpoints included.
std::vector<double> linspace(double start, double stop, int count);

}  // namespace qpgnet
