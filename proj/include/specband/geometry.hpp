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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "specband/grid.hpp"
#include "specband/symbol.hpp"

namespace specband {

enum class WeightKind { lebesgue, nu, kernel_diagonal, custom };
std::string to_string(WeightKind k);

/// Density w of a measure d mu = w dx, sampled at nodes. Strictly positive.
class WeightField {
 public:
  WeightField(GridSpec grid, std::vector<double> w, WeightKind kind);

  const GridSpec& grid() const { return grid_; }
  std::span<const double> values() const { return w_; }
  WeightKind kind() const { return kind_; }

 private:
  GridSpec grid_;
  std::vector<double> w_;
  WeightKind kind_;
};

WeightField lebesgue_weight(const GridSpec& grid);
/// det(a(x))^{-1/2}.
WeightField nu_weight(const SymbolField& a);
/// x -> k(x, x).
WeightField kernel_diagonal_weight(const GridSpec& grid, std::span<const double> diagonal);
WeightField custom_weight(const GridSpec& grid, std::vector<double> w);

/// mu(B_r(x)) = h^d sum over nodes in the ball of w.
double ball_measure(const WeightField& w, std::size_t center, double radius);

/// Distinct grid nodes on the torus, sorted by node index.
class PointSet {
 public:
  PointSet(GridSpec grid, std::vector<std::size_t> nodes, std::string provenance = "", std::uint64_t seed = 0);

  const GridSpec& grid() const { return grid_; }
  std::span<const std::size_t> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  std::vector<Point> coordinates() const;
  const std::string& provenance() const { return provenance_; }
  std::uint64_t seed() const { return seed_; }
  /// Union with another set on the same grid; throws on duplicates.
  PointSet merged(const PointSet& other) const;
  /// Copy without the i-th point.
  PointSet without(std::size_t i) const;

 private:
  GridSpec grid_;
  std::vector<std::size_t> nodes_;
  std::string provenance_;
  std::uint64_t seed_;
};

/// "# specband pointset v1 dim=<d> L=<L> seed=<seed>" then one point per line.
void write_pointset(std::ostream& os, const PointSet& s);
/// Points must sit on nodes of `grid` (within 1e-9 h).
PointSet read_pointset(std::istream& is, const GridSpec& grid);

struct DensityCurve {
  std::vector<double> radii;
  std::vector<double> inf;
  std::vector<double> sup;
  double d_minus = 0.0;
  double d_plus = 0.0;
};

/// Largest admissible density radius: L/4.
double density_radius_cap(const GridSpec& grid);

/// inf/sup over window centers (all nodes) of #(S cap B_r(x)) / mu(B_r(x)).
DensityCurve beurling_density(const PointSet& s, const WeightField& w, std::span<const double> radii);

/// inf/sup over centers of (h^d sum_{B_r(x)} f) / mu(B_r(x)).
DensityCurve averaged_trace(std::span<const double> field, const WeightField& w, std::span<const double> radii);

struct UniformPoints {
  double alpha = 1.0;
};
struct JitteredPoints {
  double alpha = 1.0;
  double jitter = 0.0;  // absolute, uniform in [-jitter, jitter] per axis
};
struct PoissonPoints {
  double rate = 1.0;  // expected points per unit volume
};
/// s_k solves int_0^{s_k} a(y)^{-1/2} dy = k / rho.
struct NuTargetedPoints {
  double rho = 1.0;
};

PointSet generate_uniform(const GridSpec& grid, const UniformPoints& p);
PointSet generate_jittered(const GridSpec& grid, const JitteredPoints& p, std::uint64_t seed);
PointSet generate_poisson(const GridSpec& grid, const PoissonPoints& p, std::uint64_t seed);
PointSet generate_nu_targeted(const SymbolField& a, const NuTargetedPoints& p);

/// max over grid centers of #(S cap B_rho(x)).
std::size_t separation_report(const PointSet& s, double rho);

struct ConversionReport {
  std::vector<double> radii;
  std::vector<double> d0_minus;        // D_0^-(S) with mu = k(x,x) dx
  std::vector<double> d_mu_minus;      // D_mu^-(S)
  std::vector<double> trace_mu_minus;  // tr_mu^-(k)
  std::vector<bool> sampling_predicate_d0;  // D_0^- >= 1
  std::vector<bool> sampling_predicate_mu;  // D_mu^- >= tr_mu^-
  double tolerance = 1e-6;
  std::size_t disagreements = 0;
  bool ok = false;
};

/// Compares "D_0^-(S) >= 1" with "D_mu^-(S) >= tr_mu^-(k)" radius by radius.
/// Values within `tolerance` (relative) of their threshold count as agreeing.
ConversionReport density_conversion_check(const PointSet& s, const WeightField& mu,
                                          std::span<const double> kernel_diagonal,
                                          std::span<const double> radii);

void write_density_curve(std::ostream& os, const DensityCurve& c);

}  // namespace specband
