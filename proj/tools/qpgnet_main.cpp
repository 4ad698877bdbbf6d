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

// Command-line front end: qpgnet --config run.json [--out DIR] [--grid N] [--threads N]

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qpgnet/config.hpp"
#include "qpgnet/errors.hpp"
#include "qpgnet/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Frequency-bin quantum network simulator (PDC source + multi-output pulse gate)"};
  app.set_version_flag("--version", std::string(QPGNET_VERSION));
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<int> grid;
  std::optional<int> threads;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "Output directory (overrides output_dir)");
  app.add_option("--grid", grid, "Grid points per axis (overrides grid_n)");
  app.add_option("--threads", threads, "Scan worker threads, 0 for all cores");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    qpgnet::RunConfig config = qpgnet::parse_config_file(config_path);
    if (out_dir) config.output_dir = *out_dir;
    if (grid) config.grid_n = *grid;
    if (threads) config.threads = *threads;
    return qpgnet::run(config, std::cout, std::cerr);
  } catch (const qpgnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
