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

// Torus ball stencils as runs of consecutive x-offsets, one run per y-offset.
// Window sums then reduce to contiguous SIMD sums over at most two segments
// per run.

#include <cstdint>
#include <span>
#include <vector>

#include "specband/grid.hpp"
#include "specband/simd/kernels.hpp"

namespace specband::detail {

struct Run {
  std::int64_t dy;
  std::int64_t lo;  // inclusive
  std::int64_t hi;  // inclusive
};

inline std::vector<Run> ball_runs(const GridSpec& g, double radius) {
  std::vector<Run> runs;
  const std::int64_t nx = g.points(0);
  const std::int64_t ny = g.points(1);
  const std::int64_t y_lo = g.dim() == 1 ? 0 : -(ny / 2);
  const std::int64_t y_hi = g.dim() == 1 ? 0 : ny - ny / 2 - 1;
  for (std::int64_t dy = y_lo; dy <= y_hi; ++dy) {
    std::int64_t lo = 1, hi = 0;
    for (std::int64_t dx = -(nx / 2); dx <= nx - nx / 2 - 1; ++dx) {
      if (in_ball(g, {dx, dy}, radius)) {
        if (lo > hi) lo = hi = dx;
        else hi = dx;
      }
    }
    if (lo <= hi) runs.push_back({dy, lo, hi});
  }
  return runs;
}

/// sum over the stencil around `center` of field values, in a fixed order.
inline double window_sum(const GridSpec& g, std::span<const double> field, std::size_t center,
                         const std::vector<Run>& runs) {
  const auto c = g.coords(center);
  const std::int64_t nx = g.points(0);
  const std::int64_t ny = g.points(1);
  const auto& k = simd::active();
  double total = 0.0;
  for (const auto& r : runs) {
    std::int64_t y = (c[1] + r.dy) % ny;
    if (y < 0) y += ny;
    const double* row = field.data() + y * nx;
    std::int64_t x0 = (c[0] + r.lo) % nx;
    if (x0 < 0) x0 += nx;
    const std::int64_t len = r.hi - r.lo + 1;
    if (x0 + len <= nx) {
      total += k.sum(row + x0, static_cast<std::size_t>(len));
    } else {
      const std::int64_t first = nx - x0;
      total += k.sum(row + x0, static_cast<std::size_t>(first)) +
               k.sum(row, static_cast<std::size_t>(len - first));
    }
  }
  return total;
}

}  // namespace specband::detail
