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

#include "specband/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "specband/error.hpp"
#include "window.hpp"

namespace specband {

std::string to_string(WeightKind k) {
  switch (k) {
    case WeightKind::lebesgue: return "lebesgue";
    case WeightKind::nu: return "nu";
    case WeightKind::kernel_diagonal: return "kernel-diagonal";
    case WeightKind::custom: return "custom";
  }
  return "custom";
}

WeightField::WeightField(GridSpec grid, std::vector<double> w, WeightKind kind)
    : grid_(grid), w_(std::move(w)), kind_(kind) {
  if (w_.size() != grid_.size()) throw ValidationError("weight field size does not match grid");
  for (double v : w_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("weight must be finite and strictly positive");
  }
}

WeightField lebesgue_weight(const GridSpec& grid) {
  return {grid, std::vector<double>(grid.size(), 1.0), WeightKind::lebesgue};
}

WeightField nu_weight(const SymbolField& a) {
  std::vector<double> w(a.grid().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / std::sqrt(a.at(i).determinant(a.grid().dim()));
  return {a.grid(), std::move(w), WeightKind::nu};
}

WeightField kernel_diagonal_weight(const GridSpec& grid, std::span<const double> diagonal) {
  return {grid, {diagonal.begin(), diagonal.end()}, WeightKind::kernel_diagonal};
}

WeightField custom_weight(const GridSpec& grid, std::vector<double> w) {
  return {grid, std::move(w), WeightKind::custom};
}

double ball_measure(const WeightField& w, std::size_t center, double radius) {
  const auto runs = detail::ball_runs(w.grid(), radius);
  return w.grid().cell_volume() * detail::window_sum(w.grid(), w.values(), center, runs);
}

PointSet::PointSet(GridSpec grid, std::vector<std::size_t> nodes, std::string provenance, std::uint64_t seed)
    : grid_(grid), nodes_(std::move(nodes)), provenance_(std::move(provenance)), seed_(seed) {
  std::sort(nodes_.begin(), nodes_.end());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i] >= grid_.size()) throw ValidationError("point outside the grid");
    if (i > 0 && nodes_[i] == nodes_[i - 1]) throw ValidationError("duplicate point in point set");
  }
}

std::vector<Point> PointSet::coordinates() const {
  std::vector<Point> out;
  out.reserve(nodes_.size());
  for (std::size_t n : nodes_) out.push_back(grid_.position(n));
  return out;
}

PointSet PointSet::merged(const PointSet& other) const {
  if (!(other.grid_ == grid_)) throw ValidationError("cannot merge point sets on different grids");
  std::vector<std::size_t> all(nodes_);
  all.insert(all.end(), other.nodes_.begin(), other.nodes_.end());
  return {grid_, std::move(all), provenance_ + "+" + other.provenance_, seed_};
}

PointSet PointSet::without(std::size_t i) const {
  std::vector<std::size_t> rest(nodes_);
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
  return {grid_, std::move(rest), provenance_, seed_};
}

void write_pointset(std::ostream& os, const PointSet& s) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "# specband pointset v1 dim=" << s.grid().dim() << " L=" << s.grid().length(0)
      << " seed=" << s.seed() << '\n';
  for (const auto& p : s.coordinates()) {
    buf << p[0];
    if (s.grid().dim() == 2) buf << ',' << p[1];
    buf << '\n';
  }
  os << buf.str();
}

PointSet read_pointset(std::istream& is, const GridSpec& grid) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# specband pointset v1", 0) != 0) {
    throw ValidationError("point set file lacks the '# specband pointset v1' header");
  }
  std::uint64_t seed = 0;
  int dim = 0;
  {
    std::istringstream hs(line.substr(std::string("# specband pointset v1").size()));
    std::string tok;
    while (hs >> tok) {
      if (tok.rfind("dim=", 0) == 0) dim = std::stoi(tok.substr(4));
      if (tok.rfind("seed=", 0) == 0) seed = std::stoull(tok.substr(5));
    }
  }
  if (dim != grid.dim()) throw ValidationError("point set dimension does not match the grid");
  std::vector<std::size_t> nodes;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    Point p{0.0, 0.0};
    for (int axis = 0; axis < dim; ++axis) {
      if (!(ls >> p[axis])) throw ValidationError("malformed point set line: " + line);
    }
    NodeOffset c{0, 0};
    for (int axis = 0; axis < dim; ++axis) {
      const double q = p[axis] / grid.spacing(axis);
      const double k = std::round(q);
      if (std::abs(q - k) > 1e-9) throw ValidationError("point is not on a grid node: " + line);
      auto ki = static_cast<std::int64_t>(k) % grid.points(axis);
      if (ki < 0) ki += grid.points(axis);
      c[axis] = ki;
    }
    nodes.push_back(grid.index(c));
  }
  return {grid, std::move(nodes), "file", seed};
}

double density_radius_cap(const GridSpec& grid) { return 0.25 * grid.min_length(); }

namespace {

void check_radii(const GridSpec& g, std::span<const double> radii) {
  const double cap = density_radius_cap(g);
  for (double r : radii) {
    if (!(r > 0.0)) throw ValidationError("density radius must be positive");
    if (r > cap) {
      std::ostringstream os;
      os << "radius " << r << " above cap L/4 = " << cap;
      throw ValidationError(os.str());
    }
  }
}

std::vector<double> occupancy(const PointSet& s) {
  std::vector<double> occ(s.grid().size(), 0.0);
  for (std::size_t n : s.nodes()) occ[n] = 1.0;
  return occ;
}

// inf/sup over centers of numerator(x) / mu(B_r(x)), numerator a window sum of `field`
// scaled by `field_scale`.
DensityCurve windowed_ratio(std::span<const double> field, double field_scale, const WeightField& w,
                            std::span<const double> radii) {
  const auto& g = w.grid();
  check_radii(g, radii);
  DensityCurve c;
  c.radii.assign(radii.begin(), radii.end());
  const double hd = g.cell_volume();
  for (double r : radii) {
    const auto runs = detail::ball_runs(g, r);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < g.size(); ++x) {
      const double num = field_scale * detail::window_sum(g, field, x, runs);
      const double den = hd * detail::window_sum(g, w.values(), x, runs);
      const double v = num / den;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    c.inf.push_back(lo);
    c.sup.push_back(hi);
  }
  if (!c.radii.empty()) {
    const auto last = static_cast<std::size_t>(
        std::max_element(c.radii.begin(), c.radii.end()) - c.radii.begin());
    c.d_minus = c.inf[last];
    c.d_plus = c.sup[last];
  }
  return c;
}

}  // namespace

DensityCurve beurling_density(const PointSet& s, const WeightField& w, std::span<const double> radii) {
  if (!(s.grid() == w.grid())) throw ValidationError("point set and weight live on different grids");
  const auto occ = occupancy(s);
  return windowed_ratio(occ, 1.0, w, radii);
}

DensityCurve averaged_trace(std::span<const double> field, const WeightField& w, std::span<const double> radii) {
  if (field.size() != w.grid().size()) throw ValidationError("field size does not match the weight grid");
  return windowed_ratio(field, w.grid().cell_volume(), w, radii);
}

namespace {

std::int64_t snap(double x, const GridSpec& g, int axis) {
  auto k = static_cast<std::int64_t>(std::llround(x / g.spacing(axis))) % g.points(axis);
  if (k < 0) k += g.points(axis);
  return k;
}

// Snapped node, or one node along x when taken; throws when both neighbors are taken too.
std::size_t place(std::vector<char>& taken, const GridSpec& g, NodeOffset c) {
  const std::size_t node = g.index(c);
  for (std::int64_t shift : {0, 1, -1}) {
    const std::size_t cand = g.shifted(node, {shift, 0});
    if (!taken[cand]) {
      taken[cand] = 1;
      return cand;
    }
  }
  throw ValidationError("point density too high: snapping to the grid cannot avoid duplicates");
}

std::string describe(const char* kind, double v) {
  std::ostringstream os;
  os << kind << "(" << v << ")";
  return os.str();
}

}  // namespace

PointSet generate_uniform(const GridSpec& g, const UniformPoints& p) {
  return generate_jittered(g, {p.alpha, 0.0}, 0);
}

PointSet generate_jittered(const GridSpec& g, const JitteredPoints& p, std::uint64_t seed) {
  if (!(p.alpha > 0.0)) throw ValidationError("grid step alpha must be positive");
  if (p.jitter < 0.0) throw ValidationError("jitter must be nonnegative");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-p.jitter, p.jitter);
  std::array<std::int64_t, 2> counts{1, 1};
  for (int axis = 0; axis < g.dim(); ++axis) {
    counts[axis] = static_cast<std::int64_t>(std::ceil(g.length(axis) / p.alpha - 1e-9));
  }
  std::vector<char> taken(g.size(), 0);
  std::vector<std::size_t> nodes;
  for (std::int64_t j = 0; j < counts[1]; ++j) {
    for (std::int64_t i = 0; i < counts[0]; ++i) {
      NodeOffset c{0, 0};
      const std::array<std::int64_t, 2> idx{i, j};
      for (int axis = 0; axis < g.dim(); ++axis) {
        const double shift = p.jitter > 0.0 ? u(rng) : 0.0;
        c[axis] = snap(static_cast<double>(idx[axis]) * p.alpha + shift, g, axis);
      }
      nodes.push_back(place(taken, g, c));
    }
  }
  const std::string prov = p.jitter > 0.0 ? describe("jittered", p.alpha) : describe("uniform", p.alpha);
  return {g, std::move(nodes), prov, seed};
}

PointSet generate_poisson(const GridSpec& g, const PoissonPoints& p, std::uint64_t seed) {
  if (!(p.rate >= 0.0)) throw ValidationError("Poisson rate must be nonnegative");
  std::mt19937_64 rng(seed);
  const double volume = g.dim() == 1 ? g.length(0) : g.length(0) * g.length(1);
  std::poisson_distribution<long> count(p.rate * volume);
  const long n = p.rate > 0.0 ? count(rng) : 0;
  std::uniform_real_distribution<double> ux(0.0, g.length(0));
  std::uniform_real_distribution<double> uy(0.0, g.dim() == 2 ? g.length(1) : 1.0);
  std::vector<char> taken(g.size(), 0);
  std::vector<std::size_t> nodes;
  for (long k = 0; k < n; ++k) {
    NodeOffset c{snap(ux(rng), g, 0), 0};
    const double y = uy(rng);
    if (g.dim() == 2) c[1] = snap(y, g, 1);
    nodes.push_back(place(taken, g, c));
  }
  return {g, std::move(nodes), describe("poisson", p.rate), seed};
}

PointSet generate_nu_targeted(const SymbolField& a, const NuTargetedPoints& p) {
  const auto& g = a.grid();
  if (g.dim() != 1) throw ValidationError("nu-targeted generator requires dim = 1");
  if (!(p.rho > 0.0)) throw ValidationError("target density rho must be positive");
  const std::size_t n = g.size();
  const double h = g.spacing(0);
  const double L = g.length(0);

  // Cumulative nu with a^{-1/2} linear between nodes.
  std::vector<double> dens(n + 1), cum(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) dens[i] = 1.0 / std::sqrt(a.at(i).xx);
  dens[n] = dens[0];
  for (std::size_t i = 0; i < n; ++i) cum[i + 1] = cum[i] + 0.5 * h * (dens[i] + dens[i + 1]);
  const double total = cum[n];
  auto nu_of = [&](double x) {
    auto i = std::min<std::size_t>(static_cast<std::size_t>(x / h), n - 1);
    const double tau = x - static_cast<double>(i) * h;
    return cum[i] + dens[i] * tau + (dens[i + 1] - dens[i]) * tau * tau / (2.0 * h);
  };

  std::vector<char> taken(n, 0);
  std::vector<std::size_t> nodes;
  for (long k = 0;; ++k) {
    const double target = static_cast<double>(k) / p.rho;
    if (target >= total * (1.0 - 1e-12)) break;
    double lo = 0.0, hi = L;
    while (hi - lo > 1e-10 * L) {
      const double mid = 0.5 * (lo + hi);
      (nu_of(mid) < target ? lo : hi) = mid;
    }
    nodes.push_back(place(taken, g, {snap(0.5 * (lo + hi), g, 0), 0}));
  }
  return {g, std::move(nodes), describe("nu-targeted", p.rho), 0};
}

std::size_t separation_report(const PointSet& s, double rho) {
  if (!(rho > 0.0)) throw ValidationError("separation radius must be positive");
  const auto& g = s.grid();
  if (s.empty()) return 0;
  const auto occ = occupancy(s);
  const auto runs = detail::ball_runs(g, rho);
  double worst = 0.0;
  for (std::size_t x = 0; x < g.size(); ++x) worst = std::max(worst, detail::window_sum(g, occ, x, runs));
  return static_cast<std::size_t>(worst);
}

ConversionReport density_conversion_check(const PointSet& s, const WeightField& mu,
                                          std::span<const double> kernel_diagonal,
                                          std::span<const double> radii) {
  const auto kweight = kernel_diagonal_weight(mu.grid(), kernel_diagonal);
  const auto d0 = beurling_density(s, kweight, radii);
  const auto dmu = beurling_density(s, mu, radii);
  const auto tr = averaged_trace(kernel_diagonal, mu, radii);
  ConversionReport rep;
  rep.radii.assign(radii.begin(), radii.end());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    rep.d0_minus.push_back(d0.inf[i]);
    rep.d_mu_minus.push_back(dmu.inf[i]);
    rep.trace_mu_minus.push_back(tr.inf[i]);
    const bool p0 = d0.inf[i] >= 1.0;
    const bool pmu = dmu.inf[i] >= tr.inf[i];
    rep.sampling_predicate_d0.push_back(p0);
    rep.sampling_predicate_mu.push_back(pmu);
    const bool borderline = std::abs(d0.inf[i] - 1.0) <= rep.tolerance ||
                            std::abs(dmu.inf[i] / tr.inf[i] - 1.0) <= rep.tolerance;
    if (p0 != pmu && !borderline) ++rep.disagreements;
  }
  rep.ok = rep.disagreements == 0;
  return rep;
}

void write_density_curve(std::ostream& os, const DensityCurve& c) {
  std::ostringstream buf;
  buf << std::setprecision(17) << "r,inf,sup\n";
  for (std::size_t i = 0; i < c.radii.size(); ++i) buf << c.radii[i] << ',' << c.inf[i] << ',' << c.sup[i] << '\n';
  os << buf.str();
}

}  // namespace specband
