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

#include "specband/report.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>

#include "specband/error.hpp"

namespace specband {

namespace {

// NaN and infinities become null so the output stays valid JSON.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json nums(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

void to_json(json& j, const SymMatrix& m) { j = json::array({m.xx, m.xy, m.yy}); }

void to_json(json& j, const FrameReport& r) {
  j = json{{"a", num(r.a)},
           {"a_raw", num(r.a_raw)},
           {"b_upper", num(r.b_upper)},
           {"riesz_min", num(r.riesz_min)},
           {"band_dimension", r.band_dimension},
           {"points", r.points},
           {"verdicts",
            {{"sampling", r.stable_sampling ? "stable-sampling" : "not-sampling"},
             {"interpolation", r.interpolating ? "interpolating" : "not-interpolating"}}},
           {"tolerances", {{"a_rel", r.tol_a_rel}, {"riesz_rel", r.tol_r_rel}}},
           {"spectral_margin", num(r.spectral_margin)}};
}

void to_json(json& j, const RieszReport& r) {
  j = json{{"riesz_min", num(r.lambda_min)},
           {"max_diagonal", num(r.max_diagonal)},
           {"verdicts", {{"interpolation", r.interpolating ? "interpolating" : "not-interpolating"}}},
           {"tolerances", {{"riesz_rel", r.tolerance_rel}}}};
}

void to_json(json& j, const Curve& c) { j = json{{"r", nums(c.radii)}, {"value", nums(c.values)}}; }

void to_json(json& j, const ApproxIdentityReport& r) {
  j = json{{"widths", nums(r.widths)},
           {"errors", nums(r.errors)},
           {"observed_order", nums(r.observed_order)},
           {"tolerances", {{"min_order", r.min_order}}},
           {"ok", r.ok}};
}

void to_json(json& j, const LimitKernelReport& r) {
  j = json{{"distances", nums(r.distances)},
           {"l2_differences", nums(r.l2_differences)},
           {"diagonal_differences", nums(r.diagonal_differences)},
           {"limit_diagonal", num(r.limit_diagonal)},
           {"tolerances", {{"slack", r.slack}}},
           {"nonincreasing", r.nonincreasing},
           {"strictly_decreasing", r.strictly_decreasing}};
}

void to_json(json& j, const DensityCurve& c) {
  j = json{{"r", nums(c.radii)},
           {"inf", nums(c.inf)},
           {"sup", nums(c.sup)},
           {"d_minus", num(c.d_minus)},
           {"d_plus", num(c.d_plus)}};
}

void to_json(json& j, const ConversionReport& r) {
  json p0 = json::array(), pmu = json::array();
  for (bool b : r.sampling_predicate_d0) p0.push_back(b);
  for (bool b : r.sampling_predicate_mu) pmu.push_back(b);
  j = json{{"r", nums(r.radii)},
           {"d0_minus", nums(r.d0_minus)},
           {"d_mu_minus", nums(r.d_mu_minus)},
           {"trace_mu_minus", nums(r.trace_mu_minus)},
           {"predicate_d0", p0},
           {"predicate_mu", pmu},
           {"disagreements", r.disagreements},
           {"tolerances", {{"borderline_rel", r.tolerance}}},
           {"ok", r.ok}};
}

void to_json(json& j, const CompkerReport& r) {
  j = json{{"min_slack", num(r.min_slack)}, {"max_ratio", num(r.max_ratio)}, {"ok", r.ok}};
}

void to_json(json& j, const BernsteinReport& r) {
  j = json{{"seeds", {r.seed}},
           {"trials", r.trials},
           {"k_max", r.k_max},
           {"max_ratio", nums(r.max_ratio)},
           {"tolerances", {{"ratio", r.tolerance}}},
           {"spectral_margin", num(r.spectral_margin)},
           {"ok", r.ok}};
}

void to_json(json& j, const DyadicReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    levels.push_back({{"r", l.r},
                      {"t", num(l.t)},
                      {"min_slack", num(l.min_slack)},
                      {"implied_lower_bound", num(l.implied_lower_bound)},
                      {"terms", l.terms}});
  }
  j = json{{"levels", levels},
           {"sufficient_range", r.sufficient_range},
           {"min_kernel_diagonal", num(r.min_kernel_diagonal)},
           {"tolerances", {{"slack", r.tolerance}}},
           {"warnings", r.warnings},
           {"ok", r.ok}};
}

void to_json(json& j, const OscillationReport& r) {
  json annuli = json::array();
  for (const auto& a : r.annuli) annuli.push_back({{"radius", num(a.radius)}, {"sup_gradient", num(a.sup_gradient)}});
  j = json{{"annuli", annuli}, {"verdict", to_string(r.verdict)}, {"heuristic", true}};
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ValidationError("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) throw ValidationError("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, path);
}

void write_kernel_csv(std::ostream& os, const KernelMatrix& k) {
  std::ostringstream buf;
  buf << std::setprecision(17) << "i,j,k_ij\n";
  const auto n = k.values.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) buf << i << ',' << j << ',' << k.values(i, j) << '\n';
  }
  os << buf.str();
}

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw ValidationError("truncated binary kernel");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

constexpr char kMagic[8] = {'S', 'P', 'B', 'K', 'R', 'N', '1', '\0'};

}  // namespace

void write_kernel_binary(std::ostream& os, const KernelMatrix& k) {
  const auto n = k.values.rows();
  os.write(kMagic, 8);
  put_u64(os, static_cast<std::uint64_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) put_u64(os, std::bit_cast<std::uint64_t>(k.values(i, j)));
  }
}

Eigen::MatrixXd read_kernel_binary(std::istream& is) {
  char magic[8];
  if (!is.read(magic, 8) || !std::equal(magic, magic + 8, kMagic)) throw ValidationError("bad binary kernel magic");
  const std::uint64_t n = get_u64(is);
  if (n > (1u << 16)) throw ValidationError("binary kernel size implausible");
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(ni, ni);
  for (Eigen::Index i = 0; i < ni; ++i) {
    for (Eigen::Index j = 0; j < ni; ++j) m(i, j) = std::bit_cast<double>(get_u64(is));
  }
  return m;
}

void write_diagonal_csv(std::ostream& os, const GridSpec& g, std::span<const double> diagonal) {
  std::ostringstream buf;
  buf << std::setprecision(17) << (g.dim() == 1 ? "x,k(x,x)\n" : "x,y,k(x,x)\n");
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    const auto p = g.position(i);
    buf << p[0] << ',';
    if (g.dim() == 2) buf << p[1] << ',';
    buf << diagonal[i] << '\n';
  }
  os << buf.str();
}

void write_curve_csv(std::ostream& os, const Curve& c) {
  std::ostringstream buf;
  buf << std::setprecision(17) << "r,value\n";
  for (std::size_t i = 0; i < c.radii.size(); ++i) buf << c.radii[i] << ',' << c.values[i] << '\n';
  os << buf.str();
}

}  // namespace specband
