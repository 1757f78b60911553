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

#include "specband/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "specband/error.hpp"

namespace specband {

double SymMatrix::min_eigenvalue(int dim) const {
  if (dim == 1) return xx;
  const double mean = 0.5 * (xx + yy);
  const double half_diff = 0.5 * (xx - yy);
  return mean - std::hypot(half_diff, xy);
}

double SymMatrix::determinant(int dim) const {
  return dim == 1 ? xx : xx * yy - xy * xy;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  return {a.xx + b.xx, a.xy + b.xy, a.yy + b.yy};
}

SymMatrix operator*(double s, const SymMatrix& a) { return {s * a.xx, s * a.xy, s * a.yy}; }

VariableBandwidthRecipe smooth_bandwidth_profile(double low, double high, double length, int cycles) {
  VariableBandwidthRecipe r;
  r.profile = [=](double x) {
    return low + (high - low) * 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * cycles * x / length));
  };
  std::ostringstream os;
  os << "smooth(" << low << "," << high << "," << cycles << ")";
  r.label = os.str();
  return r;
}

SymbolField::SymbolField(GridSpec grid, std::vector<SymMatrix> values, double theta)
    : grid_(grid), values_(std::move(values)), theta_(theta) {
  if (values_.size() != grid_.size()) throw ValidationError("symbol field size does not match grid");
  if (!(theta_ > 0.0)) throw ValidationError("ellipticity floor theta must be positive");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double lam = values_[i].min_eigenvalue(grid_.dim());
    if (!std::isfinite(lam) || lam < theta_) {
      std::ostringstream os;
      os << "ellipticity violation at node " << i << ": smallest eigenvalue " << lam
         << " < theta = " << theta_;
      throw ValidationError(os.str());
    }
  }
}

double SymbolField::min_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& v : values_) m = std::min(m, v.min_eigenvalue(grid_.dim()));
  return m;
}

namespace {

Point window_center(const GridSpec& g) { return {0.5 * g.length(0), 0.5 * g.length(1)}; }

double torus_distance_sq(const GridSpec& g, Point x, Point c) {
  double d2 = 0.0;
  for (int axis = 0; axis < g.dim(); ++axis) {
    const double L = g.length(axis);
    double d = std::fmod(std::abs(x[axis] - c[axis]), L);
    d = std::min(d, L - d);
    d2 += d * d;
  }
  return d2;
}

// Smooth periodic proxy for |x - c|^2: sum_j (L/pi)^2 sin^2(pi (x_j - c_j) / L).
double periodic_radius_sq(const GridSpec& g, Point x, Point c) {
  double s = 0.0;
  for (int axis = 0; axis < g.dim(); ++axis) {
    const double L = g.length(axis);
    const double v = (L / std::numbers::pi) * std::sin(std::numbers::pi * (x[axis] - c[axis]) / L);
    s += v * v;
  }
  return s;
}

struct Sampler {
  const GridSpec& grid;

  SymMatrix operator()(const ConstantRecipe& r, Point) const { return r.b; }

  SymMatrix operator()(const AsymptoticallyConstantRecipe& r, Point x) const {
    if (!(r.width > 0.0)) throw ValidationError("bump width must be positive");
    const Point c = r.center.value_or(window_center(grid));
    const double g = std::exp(-torus_distance_sq(grid, x, c) / (2.0 * r.width * r.width));
    return r.b + (r.height * g) * SymMatrix::scalar(1.0);
  }

  SymMatrix operator()(const SlowlyOscillatingRecipe& r, Point x) const {
    const double rho = std::sqrt(1.0 + periodic_radius_sq(grid, x, window_center(grid)));
    const double v = r.base + r.amplitude * std::sin(r.frequency * std::pow(rho, r.exponent));
    return SymMatrix::scalar(v);
  }

  SymMatrix operator()(const VariableBandwidthRecipe& r, Point x) const {
    if (grid.dim() != 1) throw ValidationError("variable-bandwidth-1d recipe requires dim = 1");
    if (!r.profile) throw ValidationError("variable-bandwidth-1d recipe has no profile");
    return SymMatrix::scalar(r.profile(x[0]));
  }
};

}  // namespace

SymbolField make_symbol(const GridSpec& grid, const SymbolRecipe& recipe, double theta) {
  std::vector<SymMatrix> values(grid.size());
  const Sampler sampler{grid};
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Point x = grid.position(i);
    values[i] = std::visit([&](const auto& r) { return sampler(r, x); }, recipe);
    if (grid.dim() == 1) values[i].xy = 0.0, values[i].yy = values[i].xx;
  }
  return SymbolField(grid, std::move(values), theta);
}

NodeOffset grid_shift(const GridSpec& grid, Point shift) {
  NodeOffset s{0, 0};
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const double q = shift[axis] / grid.spacing(axis);
    const double k = std::round(q);
    if (std::abs(q - k) > 1e-9 * std::max(1.0, std::abs(q))) {
      throw ValidationError("off-grid shift requested: " + std::to_string(shift[axis]) +
                            " is not a multiple of the grid spacing");
    }
    s[axis] = static_cast<std::int64_t>(k);
  }
  if (grid.dim() == 1 && shift[1] != 0.0) throw ValidationError("shift has a second component in 1D");
  return s;
}

SymbolField translate_symbol(const SymbolField& a, NodeOffset shift) {
  const auto& g = a.grid();
  std::vector<SymMatrix> out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.at(g.shifted(i, shift));
  return SymbolField(g, std::move(out), a.theta());
}

SymbolField translate_symbol(const SymbolField& a, Point shift) {
  return translate_symbol(a, grid_shift(a.grid(), shift));
}

std::string to_string(OscillationVerdict v) {
  switch (v) {
    case OscillationVerdict::slowly_oscillating_like: return "slowly-oscillating-like";
    case OscillationVerdict::not_slowly_oscillating: return "not-slowly-oscillating";
    case OscillationVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

OscillationReport oscillation_report(const SymbolField& a, int annuli) {
  if (annuli < 2) throw ValidationError("oscillation_report needs at least 2 annuli");
  const auto& g = a.grid();
  if (g.size() < static_cast<std::size_t>(annuli)) {
    throw ValidationError("fewer grid nodes than annuli");
  }
  const int dim = g.dim();
  const Point c = window_center(g);
  const double r_max = 0.5 * g.min_length();
  const double width = r_max / annuli;

  OscillationReport rep;
  rep.annuli.resize(static_cast<std::size_t>(annuli));
  for (int k = 0; k < annuli; ++k) rep.annuli[k] = {width * (k + 1), 0.0};

  auto entries = [dim](const SymMatrix& m) {
    return dim == 1 ? std::array<double, 3>{m.xx, 0.0, 0.0} : std::array<double, 3>{m.xx, m.xy, m.yy};
  };

  for (std::size_t i = 0; i < g.size(); ++i) {
    double grad = 0.0;
    std::array<std::array<double, 3>, 2> d{};
    for (int axis = 0; axis < dim; ++axis) {
      NodeOffset fwd{0, 0}, bwd{0, 0};
      fwd[axis] = 1;
      bwd[axis] = -1;
      const auto ep = entries(a.at(g.shifted(i, fwd)));
      const auto em = entries(a.at(g.shifted(i, bwd)));
      for (int e = 0; e < 3; ++e) d[axis][e] = (ep[e] - em[e]) / (2.0 * g.spacing(axis));
    }
    for (int e = 0; e < 3; ++e) {
      const double mag = std::hypot(d[0][e], d[1][e]);
      grad = std::max(grad, mag);
    }
    const double r = std::sqrt(torus_distance_sq(g, g.position(i), c));
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(r / width), annuli - 1);
    rep.annuli[k].sup_gradient = std::max(rep.annuli[k].sup_gradient, grad);
  }

  double peak = 0.0;
  for (const auto& an : rep.annuli) peak = std::max(peak, an.sup_gradient);
  const double outer = rep.annuli.back().sup_gradient;
  if (outer <= 0.1 * peak) {
    rep.verdict = OscillationVerdict::slowly_oscillating_like;
  } else if (outer >= 0.9 * peak) {
    rep.verdict = OscillationVerdict::not_slowly_oscillating;
  } else {
    rep.verdict = OscillationVerdict::inconclusive;
  }
  return rep;
}

}  // namespace specband
