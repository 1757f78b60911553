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

#include <array>
#include <cstddef>
#include <cstdint>

namespace specband {

using NodeOffset = std::array<std::int64_t, 2>;
using Point = std::array<double, 2>;

/// Periodic tensor grid on the torus [0,L_0) x [0,L_1). In one dimension the
/// second axis is degenerate (one point, zero length). Node index is
/// i0 + N0 * i1.
class GridSpec {
 public:
  GridSpec() = default;
  /// Isotropic grid: same length and point count on every axis.
  GridSpec(int dim, double length, std::int64_t points);
  GridSpec(int dim, std::array<double, 2> lengths, std::array<std::int64_t, 2> points);

  int dim() const { return dim_; }
  double length(int axis) const { return lengths_[axis]; }
  std::int64_t points(int axis) const { return points_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  std::size_t size() const { return static_cast<std::size_t>(points_[0] * points_[1]); }
  /// h^d, the quadrature weight of a node.
  double cell_volume() const;
  /// Smallest side length; radius caps are expressed against it.
  double min_length() const;

  std::size_t index(NodeOffset coords) const;
  NodeOffset coords(std::size_t node) const;
  Point position(std::size_t node) const;
  /// Node reached from `node` by an integer shift, with periodic wraparound.
  std::size_t shifted(std::size_t node, NodeOffset shift) const;
  /// Signed minimal-image offset from a to b per axis, in node units, in [-N/2, N/2).
  NodeOffset offset(std::size_t from, std::size_t to) const;
  /// Squared Euclidean length of an integer node offset.
  double offset_length_sq(NodeOffset off) const;

  bool operator==(const GridSpec&) const = default;

 private:
  int dim_ = 1;
  std::array<double, 2> lengths_{1.0, 0.0};
  std::array<std::int64_t, 2> points_{1, 1};
  std::array<double, 2> spacing_{1.0, 0.0};
};

/// Minimal-image integer offset on a periodic axis of n points, in [-n/2, n/2).
std::int64_t wrap_offset(std::int64_t delta, std::int64_t n);

/// Membership rule for torus balls: strictly inside, or on the sphere with the
/// first nonzero offset component negative. In 1D this is [x - r, x + r).
bool in_ball(const GridSpec& grid, NodeOffset off, double radius);

}  // namespace specband
