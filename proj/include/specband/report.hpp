// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The specband authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON serialization of check reports and the on-disk formats: kernel CSV,
// dense binary kernel, diagonal CSV, curve CSV. All file writes go through
// write_atomic.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <sstream>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "specband/analysis.hpp"
#include "specband/geometry.hpp"
#include "specband/spectral.hpp"
#include "specband/symbol.hpp"

namespace specband {

using json = nlohmann::ordered_json;

void to_json(json& j, const FrameReport& r);
void to_json(json& j, const RieszReport& r);
void to_json(json& j, const Curve& c);
void to_json(json& j, const ApproxIdentityReport& r);
void to_json(json& j, const LimitKernelReport& r);
void to_json(json& j, const DensityCurve& c);
void to_json(json& j, const ConversionReport& r);
void to_json(json& j, const CompkerReport& r);
void to_json(json& j, const BernsteinReport& r);
void to_json(json& j, const DyadicReport& r);
void to_json(json& j, const OscillationReport& r);
void to_json(json& j, const SymMatrix& m);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

/// Writes `content` to a sibling temporary file and renames it over `path`.
/// Creates parent directories.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// "i,j,k_ij" per entry (upper and lower triangle), 17 significant digits.
void write_kernel_csv(std::ostream& os, const KernelMatrix& k);
/// "SPBKRN1\0", n as u64 little-endian, then n*n f64 little-endian, row-major.
void write_kernel_binary(std::ostream& os, const KernelMatrix& k);
/// Reads the binary format back (used by tests and external round-trips).
Eigen::MatrixXd read_kernel_binary(std::istream& is);
/// "x,k(x,x)" per node in 1D; "x,y,k(x,x)" in 2D.
void write_diagonal_csv(std::ostream& os, const GridSpec& g, std::span<const double> diagonal);
/// "r,value".
void write_curve_csv(std::ostream& os, const Curve& c);

/// Dumps any of the writers above to a string.
template <class F>
std::string render(F&& writer) {
  std::ostringstream os;
  writer(os);
  return os.str();
}

}  // namespace specband
