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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "specband/grid.hpp"

namespace specband {

/// Real symmetric 2x2 matrix; in one dimension only `xx` is used.
struct SymMatrix {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  static SymMatrix scalar(double v) { return {v, 0.0, v}; }
  double min_eigenvalue(int dim) const;
  double determinant(int dim) const;
  bool operator==(const SymMatrix&) const = default;
};

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator*(double s, const SymMatrix& a);

struct ConstantRecipe {
  SymMatrix b;
};

/// b + height * exp(-|x - c|^2 / (2 width^2)) * Id, torus distance, c defaults
/// to the window center.
struct AsymptoticallyConstantRecipe {
  SymMatrix b;
  double height = 0.0;
  double width = 1.0;
  std::optional<Point> center;
};

/// (base + amplitude * sin(frequency * rho(x)^exponent)) * Id, where rho is a
/// smooth periodic stand-in for sqrt(1 + |x - c|^2). The gradient decays like
/// rho^(exponent - 1).
struct SlowlyOscillatingRecipe {
  double base = 2.5;
  double amplitude = 1.5;
  double frequency = 1.0;
  double exponent = 0.5;
};

/// One-dimensional scalar profile a(x), sampled at nodes.
struct VariableBandwidthRecipe {
  std::function<double(double)> profile;
  std::string label = "custom";
};

using SymbolRecipe = std::variant<ConstantRecipe, AsymptoticallyConstantRecipe,
                                  SlowlyOscillatingRecipe, VariableBandwidthRecipe>;

/// low + (high - low) * (1 - cos(2 pi cycles x / L)) / 2.
VariableBandwidthRecipe smooth_bandwidth_profile(double low, double high, double length, int cycles);

/// Matrix symbol sampled at grid nodes on the torus. Immutable.
class SymbolField {
 public:
  /// Validates uniform ellipticity against `theta`.
  SymbolField(GridSpec grid, std::vector<SymMatrix> values, double theta);

  const GridSpec& grid() const { return grid_; }
  std::span<const SymMatrix> values() const { return values_; }
  const SymMatrix& at(std::size_t node) const { return values_[node]; }
  double theta() const { return theta_; }
  /// Smallest eigenvalue over all nodes.
  double min_eigenvalue() const;

  bool operator==(const SymbolField&) const = default;

 private:
  GridSpec grid_;
  std::vector<SymMatrix> values_;
  double theta_;
};

SymbolField make_symbol(const GridSpec& grid, const SymbolRecipe& recipe, double theta);

/// T_{-x} a: the node value at z becomes a(z + x). `shift` is in node units.
SymbolField translate_symbol(const SymbolField& a, NodeOffset shift);
/// Same, for a physical shift; throws ValidationError when off-grid.
SymbolField translate_symbol(const SymbolField& a, Point shift);
/// Converts a physical shift to node units, or throws ValidationError.
NodeOffset grid_shift(const GridSpec& grid, Point shift);

enum class OscillationVerdict { slowly_oscillating_like, not_slowly_oscillating, inconclusive };
std::string to_string(OscillationVerdict v);

struct OscillationReport {
  struct Annulus {
    double radius;  // outer radius
    double sup_gradient;
  };
  std::vector<Annulus> annuli;
  OscillationVerdict verdict = OscillationVerdict::inconclusive;
};

/// Heuristic: sup of centered-difference gradient magnitudes of every entry of
/// a, per annulus around the window center.
OscillationReport oscillation_report(const SymbolField& a, int annuli);

}  // namespace specband
