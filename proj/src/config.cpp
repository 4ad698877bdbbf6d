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

#include "qpgnet/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qpgnet/errors.hpp"
#include "qpgnet/io.hpp"

namespace qpgnet {
using nlohmann::json;

namespace {

// Typed access to one JSON object that remembers which keys were read, so
// leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + "expected an object");
  }

  template <typename T>
  void read(const std::string& key, T& target) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      target = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(path_of(key) + ": wrong type");
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  Section child(const std::string& key) {
    seen_.insert(key);
    static const json kEmpty = json::object();
    return Section(j_.contains(key) ? j_.at(key) : kEmpty, path_of(key));
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(path_of(key) + ": unknown key");
    }
  }

  std::string path_of(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  std::string where() const { return path_.empty() ? "" : path_ + ": "; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require_fraction(double v, const std::string& key) {
  if (!(v > 0.0 && v < 1.0)) {
    std::ostringstream msg;
    msg << key << ": " << v << " is outside (0, 1)";
    throw ConfigError(msg.str());
  }
}

void require_fractions(const std::vector<double>& v, const std::string& key) {
  for (std::size_t i = 0; i < v.size(); ++i) require_fraction(v[i], key + "[" + std::to_string(i) + "]");
}

void require_nonnegative(const std::vector<double>& v, const std::string& key) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0)) throw ConfigError(key + "[" + std::to_string(i) + "]: must be >= 0");
  }
}

void require_positive(double v, const std::string& key) {
  if (!(v > 0.0)) throw ConfigError(key + ": must be positive");
}

std::string pattern_name(PhasePattern p) { return p == PhasePattern::equal ? "equal" : "alternating"; }

PhasePattern parse_pattern(const std::string& s, const std::string& key) {
  if (s == "equal") return PhasePattern::equal;
  if (s == "alternating") return PhasePattern::alternating;
  throw ConfigError(key + ": unknown phase pattern '" + s + "'");
}

Experiment parse_experiment(const std::string& s) {
  for (auto e : {Experiment::demo_beamsplitter, Experiment::scan_binwidth, Experiment::scan_scaling,
                 Experiment::estimate_nin}) {
    if (experiment_name(e) == s) return e;
  }
  throw ConfigError("experiment: unknown experiment '" + s + "'");
}

NetworkUnitary resolve_network(const RunConfig& c) {
  if (c.demo_network == "beamsplitter") return NetworkUnitary::balanced_beamsplitter();
  if (c.demo_network == "identity") return NetworkUnitary::identity(c.demo_network_size);
  if (c.demo_network == "random") {
    return NetworkUnitary::random(c.demo_network_size, c.demo_network_seed);
  }
  throw ConfigError("demo.network: unknown network '" + c.demo_network + "'");
}

}  // namespace

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::demo_beamsplitter: return "demo-beamsplitter";
    case Experiment::scan_binwidth: return "scan-binwidth";
    case Experiment::scan_scaling: return "scan-scaling";
    case Experiment::estimate_nin: return "estimate-nin";
  }
  return "unknown";
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c;
  Section top(root, "");
  std::string experiment = experiment_name(c.experiment);
  std::string output_dir = c.output_dir.string();
  top.read("experiment", experiment);
  c.experiment = parse_experiment(experiment);
  top.read("grid_n", c.grid_n);
  top.read("output_dir", output_dir);
  c.output_dir = output_dir;
  top.read("threads", c.threads);

  {
    Section s = top.child("demo");
    s.read("fwhm_jsa", c.demo.fwhm_jsa);
    s.read("fwhm_bin", c.demo.fwhm_bin);
    s.read("mean_photons", c.demo.mean_photons);
    s.read("network", c.demo_network);
    s.read("network_size", c.demo_network_size);
    s.read("network_seed", c.demo_network_seed);
    if (c.demo_network != "beamsplitter") {
      c.demo.bin_centers = linspace(0.2, 0.8, std::max(c.demo_network_size, 1));
    }
    s.read("bin_centers", c.demo.bin_centers);
    s.finish();
  }
  {
    Section s = top.child("scan_binwidth");
    s.read("widths", c.binwidth.widths);
    s.read("mean_photons", c.binwidth.mean_photons);
    s.read("fwhm_jsa", c.binwidth.fwhm_jsa);
    s.read("bin_offset", c.binwidth.bin_offset);
    s.finish();
  }
  {
    Section s = top.child("scan_scaling");
    s.read("n_bins", c.scaling.n_bins);
    s.read("widths", c.scaling.widths);
    std::vector<std::string> patterns;
    s.read("patterns", patterns);
    if (s.has("patterns")) {
      c.patterns.clear();
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        c.patterns.push_back(parse_pattern(patterns[i], s.path_of("patterns") + "[" + std::to_string(i) + "]"));
      }
    }
    s.read("fwhm_jsa", c.scaling.fwhm_jsa_list);
    s.read("mean_photons", c.scaling.mean_photons);
    s.finish();
  }
  {
    Section s = top.child("estimate_nin");
    s.read("input_bandwidth", c.budget.input_bandwidth);
    s.read("pump_bandwidth", c.budget.pump_bandwidth);
    s.read("n_out", c.budget.n_out);
    s.read("pdc_resolution", c.budget.pdc_resolution);
    s.read("mqpg_resolution", c.budget.mqpg_resolution);
    s.read("heatmap_bandwidths", c.heatmap_bandwidths);
    s.read("heatmap_resolutions", c.heatmap_resolutions);
    s.finish();
  }
  top.finish();

  validate(c);
  c.demo.unitary = resolve_network(c);
  return c;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(const RunConfig& c) {
  if (c.grid_n < 64) throw ConfigError("grid_n: " + std::to_string(c.grid_n) + " is below 64");
  if (c.threads < 0) throw ConfigError("threads: must be >= 0");

  require_fraction(c.demo.fwhm_jsa, "demo.fwhm_jsa");
  require_fraction(c.demo.fwhm_bin, "demo.fwhm_bin");
  require_nonnegative({c.demo.mean_photons}, "demo.mean_photons");
  require_fractions(c.demo.bin_centers, "demo.bin_centers");
  if (c.demo_network == "beamsplitter" ? c.demo.bin_centers.size() != 2
                                       : static_cast<int>(c.demo.bin_centers.size()) != c.demo_network_size) {
    throw ConfigError("demo.bin_centers: count does not match the network size");
  }
  if (c.demo_network_size < 1) throw ConfigError("demo.network_size: must be >= 1");

  require_fractions(c.binwidth.widths, "scan_binwidth.widths");
  require_nonnegative(c.binwidth.mean_photons, "scan_binwidth.mean_photons");
  require_fraction(c.binwidth.fwhm_jsa, "scan_binwidth.fwhm_jsa");
  if (!(c.binwidth.bin_offset > 0.0 && c.binwidth.bin_offset < 0.5)) {
    throw ConfigError("scan_binwidth.bin_offset: must lie in (0, 0.5)");
  }

  for (std::size_t i = 0; i < c.scaling.n_bins.size(); ++i) {
    if (c.scaling.n_bins[i] < 1) {
      throw ConfigError("scan_scaling.n_bins[" + std::to_string(i) + "]: must be >= 1");
    }
  }
  require_fractions(c.scaling.widths, "scan_scaling.widths");
  require_fractions(c.scaling.fwhm_jsa_list, "scan_scaling.fwhm_jsa");
  require_nonnegative({c.scaling.mean_photons}, "scan_scaling.mean_photons");
  if (c.patterns.empty()) throw ConfigError("scan_scaling.patterns: must not be empty");

  require_positive(c.budget.input_bandwidth, "estimate_nin.input_bandwidth");
  require_positive(c.budget.pump_bandwidth, "estimate_nin.pump_bandwidth");
  if (c.budget.n_out < 1) throw ConfigError("estimate_nin.n_out: must be >= 1");
  require_positive(c.budget.pdc_resolution, "estimate_nin.pdc_resolution");
  require_positive(c.budget.mqpg_resolution, "estimate_nin.mqpg_resolution");
  for (double v : c.heatmap_bandwidths) require_positive(v, "estimate_nin.heatmap_bandwidths");
  for (double v : c.heatmap_resolutions) require_positive(v, "estimate_nin.heatmap_resolutions");
}

std::string RunConfig::canonical() const {
  std::vector<std::string> pattern_names;
  for (auto p : patterns) pattern_names.push_back(pattern_name(p));
  const json j = {
      {"experiment", experiment_name(experiment)},
      {"grid_n", grid_n},
      {"output_dir", output_dir.string()},
      {"threads", threads},
      {"demo",
       {{"fwhm_jsa", demo.fwhm_jsa},
        {"fwhm_bin", demo.fwhm_bin},
        {"mean_photons", demo.mean_photons},
        {"bin_centers", demo.bin_centers},
        {"network", demo_network},
        {"network_size", demo_network_size},
        {"network_seed", demo_network_seed}}},
      {"scan_binwidth",
       {{"widths", binwidth.widths},
        {"mean_photons", binwidth.mean_photons},
        {"fwhm_jsa", binwidth.fwhm_jsa},
        {"bin_offset", binwidth.bin_offset}}},
      {"scan_scaling",
       {{"n_bins", scaling.n_bins},
        {"widths", scaling.widths},
        {"patterns", pattern_names},
        {"fwhm_jsa", scaling.fwhm_jsa_list},
        {"mean_photons", scaling.mean_photons}}},
      {"estimate_nin",
       {{"input_bandwidth", budget.input_bandwidth},
        {"pump_bandwidth", budget.pump_bandwidth},
        {"n_out", budget.n_out},
        {"pdc_resolution", budget.pdc_resolution},
        {"mqpg_resolution", budget.mqpg_resolution},
        {"heatmap_bandwidths", heatmap_bandwidths},
        {"heatmap_resolutions", heatmap_resolutions}}}};
  return j.dump();
}

std::string RunConfig::provenance() const { return sha256_hex(canonical()); }

}  // namespace qpgnet
