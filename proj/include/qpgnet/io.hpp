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
#include <string_view>
#include <vector>

#include "qpgnet/experiments.hpp"
#include "qpgnet/spectral.hpp"

namespace qpgnet {

/// Manifest of a raw little-endian, row-major array file. Complex values are
/// stored as interleaved (re, im) pairs.
struct ArrayBundle {
  std::string name;
  std::string kind;  // "real64" or "complex128"
  std::vector<std::int64_t> shape;
  std::string byte_order = "little";
  std::string data_path;  // relative to the manifest
  std::string provenance;
};

/// Writes <dir>/<name>.bin and <dir>/<name>.json; returns the manifest path.
std::filesystem::path write_bundle(const std::filesystem::path& dir, const std::string& name,
                                   const RMatrix& data, const std::string& provenance);
std::filesystem::path write_bundle(const std::filesystem::path& dir, const std::string& name,
                                   const CMatrix& data, const std::string& provenance);

ArrayBundle read_manifest(const std::filesystem::path& manifest);
RMatrix read_real_bundle(const std::filesystem::path& manifest);
CMatrix read_complex_bundle(const std::filesystem::path& manifest);

/// Shortest round-trip-safe rendering with 17 significant digits.
std::string format_double(double v);

/// Header: axis names, then purity,squeezing_db,feasible,symplectic_min.
/// Points without metrics leave the metric fields empty.
void write_scan_csv(const std::filesystem::path& path, const ScanResult& scan);

std::string sha256_hex(std::string_view data);

}  // namespace qpgnet
