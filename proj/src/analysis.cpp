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

#include "specband/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "specband/error.hpp"
#include "specband/simd/kernels.hpp"

namespace specband {

namespace {

double min_eigenvalue(const Eigen::MatrixXd& m) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

FrameReport frame_bounds(const PointSet& s, const SpectralData& spec) {
  if (spec.band_size() == 0) throw ValidationError("frame_bounds: empty band");
  if (s.empty()) throw ValidationError("frame_bounds: empty point set");
  if (!(s.grid() == spec.grid())) throw ValidationError("frame_bounds: point set on a different grid");
  const auto band = static_cast<Eigen::Index>(spec.band_size());
  const auto npts = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd e(npts, band);
  for (Eigen::Index r = 0; r < npts; ++r) {
    e.row(r) = spec.band_modes().row(static_cast<Eigen::Index>(s.nodes()[static_cast<std::size_t>(r)]));
  }
  FrameReport rep;
  rep.band_dimension = spec.band_size();
  rep.points = s.size();
  rep.spectral_margin = spec.spectral_margin();

  const Eigen::MatrixXd ete = e.transpose() * e;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ete, Eigen::EigenvaluesOnly);
  rep.a_raw = es.eigenvalues()(0);
  rep.b_upper = es.eigenvalues()(band - 1);
  rep.a = s.size() < spec.band_size() ? 0.0 : rep.a_raw;

  const Eigen::MatrixXd gram = e * e.transpose();
  rep.riesz_min = min_eigenvalue(gram);
  rep.stable_sampling = s.size() >= spec.band_size() && rep.a > rep.tol_a_rel * rep.b_upper;
  rep.interpolating = rep.riesz_min > rep.tol_r_rel * gram.diagonal().maxCoeff();
  return rep;
}

RieszReport riesz_lower_bound(const PointSet& s, const KernelMatrix& k) {
  if (s.empty()) throw ValidationError("riesz_lower_bound: empty point set");
  const auto npts = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd g(npts, npts);
  for (Eigen::Index i = 0; i < npts; ++i) {
    for (Eigen::Index j = 0; j < npts; ++j) {
      g(i, j) = k.values(static_cast<Eigen::Index>(s.nodes()[static_cast<std::size_t>(i)]),
                         static_cast<Eigen::Index>(s.nodes()[static_cast<std::size_t>(j)]));
    }
  }
  RieszReport rep;
  rep.lambda_min = min_eigenvalue(g);
  rep.max_diagonal = g.diagonal().maxCoeff();
  rep.interpolating = rep.lambda_min > rep.tolerance_rel * rep.max_diagonal;
  return rep;
}

namespace {

// Bucket b of an offset = number of (ascending) radii r with |offset| > r.
std::vector<std::uint16_t> bucket_table(const GridSpec& g, const std::vector<double>& sorted_radii) {
  std::vector<std::uint16_t> table(g.size());
  for (std::size_t node = 0; node < g.size(); ++node) {
    const auto c = g.coords(node);
    const NodeOffset off{wrap_offset(c[0], g.points(0)), wrap_offset(c[1], g.points(1))};
    const double d2 = g.offset_length_sq(off);
    std::uint16_t b = 0;
    while (b < sorted_radii.size() && d2 > sorted_radii[b] * sorted_radii[b]) ++b;
    table[node] = b;
  }
  return table;
}

std::size_t relative_node(const GridSpec& g, NodeOffset from, NodeOffset to) {
  std::int64_t dx = (to[0] - from[0]) % g.points(0);
  if (dx < 0) dx += g.points(0);
  std::int64_t dy = (to[1] - from[1]) % g.points(1);
  if (dy < 0) dy += g.points(1);
  return g.index({dx, dy});
}

// Tail sums for every radius from per-bucket sums; accumulating outward-in keeps
// the result nonincreasing in r exactly.
void tails_from_buckets(const std::vector<double>& acc, std::vector<double>& tails) {
  const std::size_t q = tails.size();
  double t = 0.0;
  for (std::size_t j = q; j-- > 0;) {
    t += acc[j + 1];
    tails[j] = t;
  }
}

struct SortedRadii {
  std::vector<double> sorted;
  std::vector<std::size_t> order;  // sorted[i] == radii[order[i]]
};

SortedRadii sort_radii(std::span<const double> radii) {
  SortedRadii s;
  s.order.resize(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) s.order[i] = i;
  std::stable_sort(s.order.begin(), s.order.end(), [&](std::size_t a, std::size_t b) { return radii[a] < radii[b]; });
  for (std::size_t i : s.order) s.sorted.push_back(radii[i]);
  return s;
}

Curve tail_curve(const KernelMatrix& k, std::span<const std::size_t> targets, double weight,
                 std::span<const double> radii) {
  const auto& g = k.grid;
  const double cap = 0.5 * g.min_length() - std::max(g.spacing(0), g.dim() == 2 ? g.spacing(1) : 0.0);
  for (double r : radii) {
    if (!(r >= 0.0) || r > cap + 1e-12) {
      std::ostringstream os;
      os << "localization radius " << r << " outside [0, L/2 - h]";
      throw ValidationError(os.str());
    }
  }
  const auto sr = sort_radii(radii);
  const auto buckets = bucket_table(g, sr.sorted);
  const std::size_t q = radii.size();
  std::vector<double> sup(q, 0.0), acc(q + 1), tails(q);
  for (std::size_t x = 0; x < g.size(); ++x) {
    std::fill(acc.begin(), acc.end(), 0.0);
    const auto cx = g.coords(x);
    const auto col = k.values.col(static_cast<Eigen::Index>(x));
    for (std::size_t y : targets) {
      const double v = col(static_cast<Eigen::Index>(y));
      acc[buckets[relative_node(g, cx, g.coords(y))]] += v * v;
    }
    tails_from_buckets(acc, tails);
    for (std::size_t j = 0; j < q; ++j) sup[j] = std::max(sup[j], weight * tails[j]);
  }
  Curve c;
  c.radii.assign(radii.begin(), radii.end());
  c.values.assign(q, 0.0);
  for (std::size_t j = 0; j < q; ++j) c.values[sr.order[j]] = sup[j];
  return c;
}

}  // namespace

Curve weak_localization_curve(const KernelMatrix& k, std::span<const double> radii) {
  std::vector<std::size_t> all(k.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return tail_curve(k, all, k.grid.cell_volume(), radii);
}

Curve hap_check(const KernelMatrix& k, const PointSet& s, std::span<const double> radii) {
  if (!(s.grid() == k.grid)) throw ValidationError("hap_check: point set on a different grid");
  return tail_curve(k, s.nodes(), 1.0, radii);
}

bool nonincreasing(const Curve& c) {
  std::vector<std::size_t> idx(c.radii.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return c.radii[a] < c.radii[b]; });
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (c.values[idx[i]] > c.values[idx[i - 1]]) return false;
  }
  return true;
}

ApproxIdentityReport approx_identity_check(const SpectralData& spec, const KernelMatrix& k,
                                           std::span<const double> widths) {
  const auto& g = spec.grid();
  const std::size_t n = g.size();
  const double hd = g.cell_volume();
  ApproxIdentityReport rep;
  for (double w : widths) {
    std::array<std::int64_t, 2> half{0, 0};
    for (int axis = 0; axis < g.dim(); ++axis) {
      const double q = w / g.spacing(axis);
      const double qi = std::round(q);
      if (std::abs(q - qi) > 1e-9 * q || static_cast<std::int64_t>(qi) % 2 == 0) {
        std::ostringstream os;
        os << "cube width " << w << " is not an odd multiple of the grid spacing";
        throw ValidationError(os.str());
      }
      half[axis] = (static_cast<std::int64_t>(qi) - 1) / 2;
    }
    std::size_t cube = 1;
    for (int axis = 0; axis < g.dim(); ++axis) cube *= static_cast<std::size_t>(2 * half[axis] + 1);
    const double inv_cube = 1.0 / static_cast<double>(cube);

    double worst = 0.0;
    std::vector<double> v(n);
    for (std::size_t x = 0; x < n; ++x) {
      std::fill(v.begin(), v.end(), 0.0);
      for (std::int64_t dy = -half[1]; dy <= half[1]; ++dy) {
        for (std::int64_t dx = -half[0]; dx <= half[0]; ++dx) {
          const auto z = static_cast<Eigen::Index>(g.shifted(x, {dx, dy}));
          simd::axpy(v, {k.values.col(z).data(), n}, inv_cube);
        }
      }
      const auto kx = k.values.col(static_cast<Eigen::Index>(x));
      for (std::size_t y = 0; y < n; ++y) v[y] -= kx(static_cast<Eigen::Index>(y));
      worst = std::max(worst, std::sqrt(hd * simd::sum_squares(v)));
    }
    rep.widths.push_back(w);
    rep.errors.push_back(worst);
  }
  bool ok = true;
  for (std::size_t i = 1; i < rep.errors.size(); ++i) {
    const double e0 = rep.errors[i - 1], e1 = rep.errors[i];
    if (e0 <= 0.0 || e1 <= 0.0) {
      rep.observed_order.push_back(std::nan(""));
      continue;
    }
    const double p = std::log(e1 / e0) / std::log(rep.widths[i] / rep.widths[i - 1]);
    rep.observed_order.push_back(p);
    ok = ok && p >= rep.min_order;
  }
  rep.ok = ok;
  return rep;
}

LimitKernelReport limit_kernel_convergence(const SymbolField& a, const SpectralData& spec,
                                           const KernelMatrix& k, const SymMatrix& b, Point bump_center,
                                           double support_radius, std::span<const double> distances) {
  const auto& g = a.grid();
  if (!(spec.grid() == g) || !(k.grid == g)) throw ValidationError("limit_kernel_convergence: grid mismatch");
  const std::size_t n = g.size();
  const Ellipsoid e{g.dim(), b, spec.omega()};
  const std::array<double, 2> lengths{g.length(0), g.length(1)};

  // k~_0 on the grid, indexed by node offset from 0.
  std::vector<double> reference(n);
  for (std::size_t y = 0; y < n; ++y) {
    const auto c = g.coords(y);
    const NodeOffset off{wrap_offset(c[0], g.points(0)), wrap_offset(c[1], g.points(1))};
    const Point u{static_cast<double>(off[0]) * g.spacing(0), static_cast<double>(off[1]) * g.spacing(1)};
    reference[y] = periodic_pw_kernel(e, lengths, u);
  }

  LimitKernelReport rep;
  rep.limit_diagonal = ellipsoid_volume(e) / std::pow(2.0 * std::numbers::pi, g.dim());
  const NodeOffset center = {static_cast<std::int64_t>(std::llround(bump_center[0] / g.spacing(0))),
                             g.dim() == 2 ? static_cast<std::int64_t>(std::llround(bump_center[1] / g.spacing(1))) : 0};
  const std::size_t center_node = g.shifted(0, center);
  std::vector<double> diff(n);
  for (double d : distances) {
    if (!(d > support_radius)) {
      std::ostringstream os;
      os << "offset at distance " << d << " lies inside the bump support (radius " << support_radius << ")";
      throw ValidationError(os.str());
    }
    const NodeOffset shift = grid_shift(g, {-d, 0.0});
    const std::size_t x = g.shifted(center_node, shift);
    for (std::size_t y = 0; y < n; ++y) {
      const auto c = g.coords(y);
      const std::size_t target = g.shifted(x, c);
      diff[y] = k.values(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(target)) - reference[y];
    }
    rep.distances.push_back(d);
    rep.l2_differences.push_back(std::sqrt(g.cell_volume() * simd::sum_squares(diff)));
    rep.diagonal_differences.push_back(
        std::abs(k.values(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) - rep.limit_diagonal));
  }
  rep.nonincreasing = true;
  rep.strictly_decreasing = true;
  for (std::size_t i = 1; i < rep.l2_differences.size(); ++i) {
    rep.nonincreasing = rep.nonincreasing && rep.l2_differences[i] <= (1.0 + rep.slack) * rep.l2_differences[i - 1];
    rep.strictly_decreasing = rep.strictly_decreasing && rep.l2_differences[i] < rep.l2_differences[i - 1];
  }
  return rep;
}

}  // namespace specband
