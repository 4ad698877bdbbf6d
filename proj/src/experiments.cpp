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

#include "qpgnet/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "qpgnet/errors.hpp"

namespace qpgnet {
namespace {

constexpr double kOmega0 = 0.5;

FrequencyGrid unit_window(int n) { return make_grid(0.0, 1.0, n); }

template <typename F>
void parallel_for(int count, int threads, F&& fn) {
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) fn(i);
    });
  }
}

double photon_scale(const SchmidtData& unit, double mean_photons) {
  if (!(mean_photons >= 0.0)) throw ConfigError("mean photon number must be nonnegative");
  return mean_photons == 0.0 ? 0.0 : photon_number_scale(unit.coefficients, mean_photons);
}

ModeSet gaussian_bins(const FrequencyGrid& grid, const std::vector<double>& centers, double fwhm) {
  return orthonormalize_symmetric(make_modes(grid, centers, BinShape{BinProfile::gaussian, fwhm}));
}

// One mQPG output fed by the superposition `row` of `bins`.
CovarianceMatrix single_output_covariance(const PDCKernels& pdc, const ModeSet& bins,
                                          const CVector& row, const ModeSet& outputs) {
  const NetworkUnitary u(row.transpose());
  const auto tf = set_conversion_unity(build_mqpg_tf(u, bins, outputs));
  return covariance_from_amplitudes(compose(pdc, sfg_kernels(tf.kernel), outputs));
}

void evaluate_into(ScanRecord& rec, const std::function<CovarianceMatrix()>& point) {
  try {
    rec.metrics = evaluate_metrics(point());
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
}

}  // namespace

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw ConfigError("linspace needs at least one point");
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    v[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
  }
  return v;
}

PointMetrics evaluate_metrics(const CovarianceMatrix& sigma) {
  const auto p = purity(sigma);
  const auto phys = check_physical(sigma);
  return {p.value, squeezing_db(sigma), phys.min(), phys.physical, p.exceeds_unity};
}

ModeSet output_peaks(const FrequencyGrid& grid, int n_out) {
  if (n_out < 1) throw ConfigError("need at least one output");
  const double spacing = grid.span() / n_out;
  std::vector<double> centers;
  for (int m = 0; m < n_out; ++m) centers.push_back(grid.start() + (m + 0.5) * spacing);
  return orthonormalize_symmetric(make_modes(grid, centers, BinShape{BinProfile::gaussian, spacing / 5.0}));
}

DemoResult run_beamsplitter_demo(const DemoConfig& c) {
  const FrequencyGrid grid = unit_window(c.grid_n);
  const ProcessKernel jsa = build_type0_jsa(grid, kOmega0, c.fwhm_jsa);
  const SchmidtData unit = takagi(jsa, 1.0);
  const double scale = photon_scale(unit, c.mean_photons);
  const PDCKernels pdc = pdc_kernels(unit, scale, grid);

  const NetworkUnitary u = c.unitary ? *c.unitary : NetworkUnitary::balanced_beamsplitter();
  if (u.n_in() != static_cast<int>(c.bin_centers.size())) {
    throw ConfigError("bin count does not match the network size");
  }
  const ModeSet bins = gaussian_bins(grid, c.bin_centers, c.fwhm_bin);
  const ModeSet outputs = output_peaks(unit_window(c.grid_n), u.n_out());
  const auto tf = set_conversion_unity(build_mqpg_tf(u, bins, outputs));
  const SFGKernels sfg = sfg_kernels(tf.kernel);
  const CompositeAmplitudes amps = compose(pdc, sfg, outputs);

  const CovarianceMatrix sigma_pdc = pdc_bin_covariance(pdc, bins);
  const CovarianceMatrix sigma_out = covariance_from_amplitudes(amps);
  DemoResult r{ProcessKernel(grid, grid, jsa.values * scale, KernelKind::jsa),
               tf.kernel,
               scale,
               tf.angles,
               bins,
               outputs,
               sigma_pdc,
               sigma_out,
               ideal_output_oracle(u, sigma_pdc),
               evaluate_metrics(sigma_pdc),
               evaluate_metrics(sigma_out),
               std::nullopt,
               std::nullopt,
               amps.commutator_residuals()};
  if (c.check_commutation) {
    r.pdc_commutation = check_commutation(pdc);
    r.sfg_commutation = check_commutation(sfg);
  }
  return r;
}

std::vector<double> default_bin_widths(int grid_n, int count) {
  const double step = 1.0 / (grid_n - 1);
  return linspace(std::max(0.005, 4.0 * step), 0.15, count);
}

ScanResult scan_bin_width(const BinWidthScanConfig& c) {
  const FrequencyGrid grid = unit_window(c.grid_n);
  const std::vector<double> widths = c.widths.empty() ? default_bin_widths(c.grid_n) : c.widths;
  const ProcessKernel jsa = build_type0_jsa(grid, kOmega0, c.fwhm_jsa);
  const SchmidtData unit = takagi(jsa, 1.0);
  std::vector<PDCKernels> pdc;
  for (double n : c.mean_photons) pdc.push_back(pdc_kernels(unit, photon_scale(unit, n), grid));

  const ModeSet outputs = output_peaks(unit_window(c.grid_n), 1);
  const CVector row = phase_pattern_row(PhasePattern::equal, 2);
  const std::vector<double> centers{kOmega0 - c.bin_offset, kOmega0 + c.bin_offset};

  ScanResult out{"scan-binwidth", {{"mean_photons", c.mean_photons}, {"fwhm_bin", widths}}, {}};
  const int nw = static_cast<int>(widths.size());
  out.records.resize(c.mean_photons.size() * nw);
  parallel_for(static_cast<int>(out.records.size()), c.threads, [&](int i) {
    ScanRecord& rec = out.records[i];
    const int a = i / nw;
    const double w = widths[i % nw];
    rec.coords = {c.mean_photons[a], w};
    rec.feasible = true;
    evaluate_into(rec, [&] {
      return single_output_covariance(pdc[a], gaussian_bins(grid, centers, w), row, outputs);
    });
  });
  return out;
}

std::vector<int> default_bin_counts() {
  std::vector<int> n;
  for (int k = 2; k <= 20; ++k) n.push_back(k);
  return n;
}

std::vector<double> default_box_widths(int count) { return linspace(0.01, 0.49, count); }

ScanResult scan_network_size(const NetworkScanConfig& c) {
  const FrequencyGrid grid = unit_window(c.grid_n);
  const std::vector<int> counts = c.n_bins.empty() ? default_bin_counts() : c.n_bins;
  const std::vector<double> widths = c.widths.empty() ? default_box_widths() : c.widths;

  std::vector<PDCKernels> pdc;
  for (double f : c.fwhm_jsa_list) {
    const SchmidtData unit = takagi(build_type0_jsa(grid, kOmega0, f), 1.0);
    pdc.push_back(pdc_kernels(unit, photon_scale(unit, c.mean_photons), grid));
  }
  const ModeSet outputs = output_peaks(unit_window(c.grid_n), 1);

  std::vector<double> count_axis(counts.begin(), counts.end());
  ScanResult out{c.pattern == PhasePattern::equal ? "scan-scaling-equal" : "scan-scaling-alternating",
                 {{"fwhm_jsa", c.fwhm_jsa_list}, {"n_bins", count_axis}, {"width", widths}},
                 {}};
  const int nd = static_cast<int>(widths.size());
  const int nn = static_cast<int>(counts.size());
  out.records.resize(c.fwhm_jsa_list.size() * nn * nd);
  parallel_for(static_cast<int>(out.records.size()), c.threads, [&](int i) {
    ScanRecord& rec = out.records[i];
    const int a = i / (nn * nd);
    const int n = counts[(i / nd) % nn];
    const double d = widths[i % nd];
    rec.coords = {c.fwhm_jsa_list[a], double(n), d};
    try {
      const BinPlacement place = place_bins(n, grid, kOmega0, d, c.profile);
      rec.feasible = place.feasible;
      if (!place.feasible) return;
      const ModeSet bins =
          c.profile == BinProfile::gaussian ? orthonormalize_symmetric(*place.bins) : *place.bins;
      const CVector row = phase_pattern_row(c.pattern, n);
      evaluate_into(rec, [&] { return single_output_covariance(pdc[a], bins, row, outputs); });
    } catch (const std::exception& e) {
      rec.feasible = true;
      rec.error = e.what();
    }
  });
  return out;
}

void HardwareBudget::validate() const {
  if (!(input_bandwidth > 0.0) || !(pump_bandwidth > 0.0) || !(pdc_resolution > 0.0) ||
      !(mqpg_resolution > 0.0) || n_out < 1) {
    throw ConfigError("hardware budget entries must be positive");
  }
}

long long estimate_n_in(const HardwareBudget& b) {
  b.validate();
  const double range = std::min(b.input_bandwidth, b.pump_bandwidth / b.n_out);
  const double bin = std::max(b.pdc_resolution, b.mqpg_resolution);
  // Guard against ratios like 4 / 0.02 landing a few ulps below an integer.
  return static_cast<long long>(std::floor(range / bin * (1.0 + 1e-12)));
}

NinHeatmap estimate_n_in_heatmap(const std::vector<double>& bandwidths,
                                 const std::vector<double>& resolutions) {
  NinHeatmap h{bandwidths, resolutions,
               RMatrix(static_cast<int>(bandwidths.size()), static_cast<int>(resolutions.size()))};
  for (std::size_t i = 0; i < bandwidths.size(); ++i) {
    for (std::size_t j = 0; j < resolutions.size(); ++j) {
      HardwareBudget b{bandwidths[i], bandwidths[i], 1, resolutions[j], resolutions[j]};
      h.values(i, j) = static_cast<double>(estimate_n_in(b));
    }
  }
  return h;
}

}  // namespace qpgnet
