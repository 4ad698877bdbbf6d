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

#include "qpgnet/runner.hpp"

#include <chrono>
#include <fstream>

#include <json.hpp>

#include "qpgnet/errors.hpp"
#include "qpgnet/experiments.hpp"
#include "qpgnet/io.hpp"

namespace qpgnet {
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

json metrics_json(const PointMetrics& m) {
  return {{"purity", m.purity},
          {"squeezing_db", m.squeezing_db},
          {"symplectic_min", m.symplectic_min},
          {"physical", m.physical},
          {"purity_exceeds_unity", m.purity_exceeds_unity}};
}

json scan_summary(const ScanResult& scan) {
  int feasible = 0, failed = 0;
  for (const auto& r : scan.records) {
    feasible += r.feasible;
    failed += r.feasible && !r.error.empty();
  }
  return {{"points", scan.records.size()}, {"feasible", feasible}, {"failed", failed}};
}

void run_demo(const RunConfig& c, json& manifest, std::ostream& out) {
  DemoConfig d = c.demo;
  d.grid_n = c.grid_n;
  const auto t0 = Clock::now();
  const DemoResult r = run_beamsplitter_demo(d);
  manifest["timings"]["pipeline_s"] = seconds_since(t0);

  const auto t1 = Clock::now();
  const std::string prov = c.provenance();
  json artifacts = json::array();
  artifacts.push_back(write_bundle(c.output_dir, "jsa", r.jsa.values, prov).filename().string());
  artifacts.push_back(write_bundle(c.output_dir, "tf", r.tf.values, prov).filename().string());
  artifacts.push_back(
      write_bundle(c.output_dir, "sigma_pdc", r.sigma_pdc.entries(), prov).filename().string());
  artifacts.push_back(
      write_bundle(c.output_dir, "sigma_out", r.sigma_out.entries(), prov).filename().string());
  manifest["timings"]["write_s"] = seconds_since(t1);
  manifest["artifacts"] = artifacts;

  json metrics = {{"jsa_scale", r.jsa_scale},
                  {"conversion_angles", r.conversion_angles},
                  {"pdc", metrics_json(r.metrics_pdc)},
                  {"output", metrics_json(r.metrics_out)},
                  {"oracle_max_deviation",
                   (r.sigma_out.entries() - r.sigma_oracle.entries()).cwiseAbs().maxCoeff()}};
  if (r.pdc_commutation) metrics["pdc_commutation"] = r.pdc_commutation->max_residual();
  if (r.sfg_commutation) metrics["sfg_commutation"] = r.sfg_commutation->max_residual();
  manifest["metrics"] = metrics;
  out << "purity " << format_double(r.metrics_out.purity) << "\n"
      << "squeezing_db " << format_double(r.metrics_out.squeezing_db) << "\n";
}

void run_binwidth(const RunConfig& c, json& manifest, std::ostream& out) {
  BinWidthScanConfig s = c.binwidth;
  s.grid_n = c.grid_n;
  s.threads = c.threads;
  const auto t0 = Clock::now();
  const ScanResult scan = scan_bin_width(s);
  manifest["timings"]["scan_s"] = seconds_since(t0);
  const fs::path csv = c.output_dir / "scan-binwidth.csv";
  write_scan_csv(csv, scan);
  manifest["artifacts"] = {csv.filename().string()};
  manifest["metrics"] = scan_summary(scan);
  out << "wrote " << csv.string() << "\n";
}

void run_scaling(const RunConfig& c, json& manifest, std::ostream& out) {
  manifest["artifacts"] = json::array();
  for (PhasePattern p : c.patterns) {
    NetworkScanConfig s = c.scaling;
    s.grid_n = c.grid_n;
    s.threads = c.threads;
    s.pattern = p;
    const auto t0 = Clock::now();
    const ScanResult scan = scan_network_size(s);
    manifest["timings"][scan.label + "_s"] = seconds_since(t0);
    const fs::path csv = c.output_dir / (scan.label + ".csv");
    write_scan_csv(csv, scan);
    manifest["artifacts"].push_back(csv.filename().string());
    manifest["metrics"][scan.label] = scan_summary(scan);
    out << "wrote " << csv.string() << "\n";
  }
}

void run_estimate(const RunConfig& c, json& manifest, std::ostream& out) {
  const long long n = estimate_n_in(c.budget);
  out << n << "\n";
  const auto bw = c.heatmap_bandwidths.empty() ? linspace(0.5, 10.0, 20) : c.heatmap_bandwidths;
  const auto res = c.heatmap_resolutions.empty() ? linspace(0.005, 0.1, 20) : c.heatmap_resolutions;
  const NinHeatmap h = estimate_n_in_heatmap(bw, res);
  const fs::path csv = c.output_dir / "estimate-nin-heatmap.csv";
  fs::create_directories(c.output_dir);
  std::ofstream f(csv, std::ios::binary);
  f << "bandwidth,resolution,n_in\n";
  for (std::size_t i = 0; i < bw.size(); ++i) {
    for (std::size_t j = 0; j < res.size(); ++j) {
      f << format_double(bw[i]) << ',' << format_double(res[j]) << ','
        << static_cast<long long>(h.values(i, j)) << '\n';
    }
  }
  if (!f) throw Error("cannot write " + csv.string());
  json lines = json::array();
  for (int m = 1; m <= 4; ++m) {
    lines.push_back({{"pump_bandwidth", c.budget.pump_bandwidth}, {"n_out", m},
                     {"available_bandwidth", c.budget.pump_bandwidth / m}});
  }
  manifest["artifacts"] = {csv.filename().string()};
  manifest["metrics"] = {{"n_in", n}};
  manifest["annotations"] = {{"pump_lines", lines}};
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  try {
    validate(c);
    fs::create_directories(c.output_dir);
    json manifest = {{"version", QPGNET_VERSION},
                     {"experiment", experiment_name(c.experiment)},
                     {"config", json::parse(c.canonical())},
                     {"provenance", c.provenance()}};
    switch (c.experiment) {
      case Experiment::demo_beamsplitter: run_demo(c, manifest, out); break;
      case Experiment::scan_binwidth: run_binwidth(c, manifest, out); break;
      case Experiment::scan_scaling: run_scaling(c, manifest, out); break;
      case Experiment::estimate_nin: run_estimate(c, manifest, out); break;
    }
    manifest["timings"]["total_s"] = seconds_since(t0);
    std::ofstream f(c.output_dir / "run.json", std::ios::binary);
    f << manifest.dump(2) << '\n';
    if (!f) throw Error("cannot write run manifest");
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qpgnet
