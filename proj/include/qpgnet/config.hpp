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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qpgnet/experiments.hpp"

namespace qpgnet {

enum class Experiment { demo_beamsplitter, scan_binwidth, scan_scaling, estimate_nin };

std::string experiment_name(Experiment e);

struct RunConfig {
  Experiment experiment = Experiment::demo_beamsplitter;
  int grid_n = 1500;
  std::filesystem::path output_dir = "out";
  int threads = 0;

  DemoConfig demo;  // unitary is resolved from the network fields below
  std::string demo_network = "beamsplitter";  // beamsplitter, identity or random
  int demo_network_size = 3;                  // identity and random only
  std::uint64_t demo_network_seed = 1;
  BinWidthScanConfig binwidth;
  NetworkScanConfig scaling;  // pattern is taken from `patterns`
  std::vector<PhasePattern> patterns{PhasePattern::equal, PhasePattern::alternating};
  HardwareBudget budget;
  std::vector<double> heatmap_bandwidths;
  std::vector<double> heatmap_resolutions;

  /// Fully defaulted configuration as canonical JSON (sorted keys).
  std::string canonical() const;
  /// SHA-256 of canonical().
  std::string provenance() const;
};

/// Parses a JSON document. Missing keys take their defaults; unknown keys and
/// out-of-range values raise ConfigError naming the key path.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Re-checks ranges after command-line overrides.
void validate(const RunConfig& config);

}  // namespace qpgnet
