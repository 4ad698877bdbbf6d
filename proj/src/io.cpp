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

#include "qpgnet/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "qpgnet/errors.hpp"

namespace qpgnet {
namespace fs = std::filesystem;
using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "array bundles are written in host order, which must be little-endian");

namespace {

void write_manifest(const fs::path& path, const ArrayBundle& b) {
  const json j = {{"name", b.name},           {"kind", b.kind},
                  {"shape", b.shape},         {"byte_order", b.byte_order},
                  {"data_path", b.data_path}, {"provenance", b.provenance}};
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << '\n';
  if (!out) throw Error("cannot write " + path.string());
}

template <typename Matrix>
fs::path write_any(const fs::path& dir, const std::string& name, const Matrix& m,
                   const std::string& kind, const std::string& provenance) {
  fs::create_directories(dir);
  ArrayBundle b{name, kind, {m.rows(), m.cols()}, "little", name + ".bin", provenance};
  // Row-major copy; Eigen stores complex<double> as (re, im) pairs already.
  const Eigen::Matrix<typename Matrix::Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  std::ofstream out(dir / b.data_path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(rm.data()),
            static_cast<std::streamsize>(rm.size() * sizeof(typename Matrix::Scalar)));
  if (!out) throw Error("cannot write " + (dir / b.data_path).string());
  const fs::path manifest = dir / (name + ".json");
  write_manifest(manifest, b);
  return manifest;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> read_any(const fs::path& manifest,
                                                               const char* kind) {
  const ArrayBundle b = read_manifest(manifest);
  if (b.kind != kind) throw UsageError("bundle " + b.name + " has kind " + b.kind);
  if (b.byte_order != "little") throw UsageError("unsupported byte order " + b.byte_order);
  if (b.shape.size() != 2) throw UsageError("bundle " + b.name + " is not two-dimensional");
  const fs::path data = manifest.parent_path() / b.data_path;
  const auto bytes = fs::file_size(data);
  const std::uintmax_t expected = b.shape[0] * b.shape[1] * sizeof(Scalar);
  if (bytes != expected) {
    throw UsageError("bundle " + b.name + " has " + std::to_string(bytes) + " bytes, expected " +
                     std::to_string(expected));
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm(b.shape[0], b.shape[1]);
  std::ifstream in(data, std::ios::binary);
  in.read(reinterpret_cast<char*>(rm.data()), static_cast<std::streamsize>(expected));
  if (!in) throw Error("cannot read " + data.string());
  return rm;
}

}  // namespace

fs::path write_bundle(const fs::path& dir, const std::string& name, const RMatrix& data,
                      const std::string& provenance) {
  return write_any(dir, name, data, "real64", provenance);
}

fs::path write_bundle(const fs::path& dir, const std::string& name, const CMatrix& data,
                      const std::string& provenance) {
  return write_any(dir, name, data, "complex128", provenance);
}

ArrayBundle read_manifest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error("cannot open " + manifest.string());
  try {
    const json j = json::parse(in);
    return {j.at("name"), j.at("kind"), j.at("shape").get<std::vector<std::int64_t>>(),
            j.at("byte_order"), j.at("data_path"), j.at("provenance")};
  } catch (const json::exception& e) {
    throw UsageError("malformed manifest " + manifest.string() + ": " + e.what());
  }
}

RMatrix read_real_bundle(const fs::path& manifest) { return read_any<double>(manifest, "real64"); }

CMatrix read_complex_bundle(const fs::path& manifest) {
  return read_any<Complex>(manifest, "complex128");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_scan_csv(const fs::path& path, const ScanResult& scan) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  for (const auto& axis : scan.axes) out << axis.name << ',';
  out << "purity,squeezing_db,feasible,symplectic_min\n";
  for (const auto& rec : scan.records) {
    for (double c : rec.coords) out << format_double(c) << ',';
    if (rec.feasible && rec.error.empty()) {
      out << format_double(rec.metrics.purity) << ',' << format_double(rec.metrics.squeezing_db)
          << ",1," << format_double(rec.metrics.symplectic_min) << '\n';
    } else {
      out << ",," << (rec.feasible ? 1 : 0) << ",\n";
    }
  }
  if (!out) throw Error("cannot write " + path.string());
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

}  // namespace qpgnet
