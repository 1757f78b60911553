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

#include "specband/grid.hpp"

#include <algorithm>
#include <string>

#include "specband/error.hpp"

namespace specband {

GridSpec::GridSpec(int dim, double length, std::int64_t points)
    : GridSpec(dim, {length, dim == 2 ? length : 0.0}, {points, dim == 2 ? points : 1}) {}

GridSpec::GridSpec(int dim, std::array<double, 2> lengths, std::array<std::int64_t, 2> points)
    : dim_(dim), lengths_(lengths), points_(points) {
  if (dim != 1 && dim != 2) {
    throw ValidationError("grid dimension must be 1 or 2, got " + std::to_string(dim));
  }
  if (dim == 1) {
    lengths_[1] = 0.0;
    points_[1] = 1;
  }
  for (int axis = 0; axis < dim; ++axis) {
    if (!(lengths_[axis] > 0.0)) throw ValidationError("grid length must be positive");
    if (points_[axis] < 2) throw ValidationError("grid needs at least 2 points per axis");
    spacing_[axis] = lengths_[axis] / static_cast<double>(points_[axis]);
    if (spacing_[axis] * static_cast<double>(points_[axis]) != lengths_[axis]) {
      throw ValidationError("grid spacing h = L/N is not exact in double precision (h*N != L)");
    }
  }
  if (dim == 1) spacing_[1] = 0.0;
}

double GridSpec::cell_volume() const {
  return dim_ == 1 ? spacing_[0] : spacing_[0] * spacing_[1];
}

double GridSpec::min_length() const {
  return dim_ == 1 ? lengths_[0] : std::min(lengths_[0], lengths_[1]);
}

std::size_t GridSpec::index(NodeOffset c) const {
  return static_cast<std::size_t>(c[0] + points_[0] * c[1]);
}

NodeOffset GridSpec::coords(std::size_t node) const {
  const auto n = static_cast<std::int64_t>(node);
  return {n % points_[0], n / points_[0]};
}

Point GridSpec::position(std::size_t node) const {
  const auto c = coords(node);
  return {static_cast<double>(c[0]) * spacing_[0], static_cast<double>(c[1]) * spacing_[1]};
}

std::int64_t wrap_offset(std::int64_t delta, std::int64_t n) {
  std::int64_t m = delta % n;
  if (m < 0) m += n;
  // [0, n) -> [-n/2, n/2)
  if (m >= n - n / 2) m -= n;
  return m;
}

std::size_t GridSpec::shifted(std::size_t node, NodeOffset shift) const {
  auto c = coords(node);
  for (int axis = 0; axis < 2; ++axis) {
    std::int64_t v = (c[axis] + shift[axis]) % points_[axis];
    if (v < 0) v += points_[axis];
    c[axis] = v;
  }
  return index(c);
}

NodeOffset GridSpec::offset(std::size_t from, std::size_t to) const {
  const auto a = coords(from);
  const auto b = coords(to);
  return {wrap_offset(b[0] - a[0], points_[0]), wrap_offset(b[1] - a[1], points_[1])};
}

double GridSpec::offset_length_sq(NodeOffset off) const {
  const double dx = static_cast<double>(off[0]) * spacing_[0];
  const double dy = static_cast<double>(off[1]) * spacing_[1];
  return dx * dx + dy * dy;
}

bool in_ball(const GridSpec& grid, NodeOffset off, double radius) {
  const double d2 = grid.offset_length_sq(off);
  const double r2 = radius * radius;
  if (d2 < r2) return true;
  if (d2 > r2) return false;
  if (off[0] != 0) return off[0] < 0;
  return off[1] < 0;
}

}  // namespace specband
