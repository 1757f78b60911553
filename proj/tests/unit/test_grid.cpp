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

#include <doctest.h>

#include "specband/error.hpp"
#include "specband/grid.hpp"

using namespace specband;

TEST_CASE("grid spacing and sizes") {
  const GridSpec g(1, 32.0, 1024);
  CHECK(g.dim() == 1);
  CHECK(g.size() == 1024);
  CHECK(g.spacing(0) == 1.0 / 32.0);
  CHECK(g.cell_volume() == 1.0 / 32.0);
  const GridSpec g2(2, {16.0, 8.0}, {32, 16});
  CHECK(g2.size() == 512);
  CHECK(g2.cell_volume() == 0.25);
  CHECK(g2.min_length() == 8.0);
}

TEST_CASE("grid rejects bad input") {
  CHECK_THROWS_AS(GridSpec(3, 1.0, 4), ValidationError);
  CHECK_THROWS_AS(GridSpec(1, 1.0, 1), ValidationError);
  CHECK_THROWS_AS(GridSpec(1, -1.0, 8), ValidationError);
}

TEST_CASE("index and coords round-trip with wraparound") {
  const GridSpec g(2, 4.0, 8);
  for (std::size_t n = 0; n < g.size(); ++n) CHECK(g.index(g.coords(n)) == n);
  const std::size_t origin = g.index({0, 0});
  CHECK(g.shifted(origin, {-1, -1}) == g.index({7, 7}));
  CHECK(g.shifted(origin, {9, 17}) == g.index({1, 1}));
  CHECK(g.offset(g.index({7, 0}), g.index({1, 0})) == NodeOffset{2, 0});
  CHECK(g.offset(g.index({0, 0}), g.index({4, 0})) == NodeOffset{-4, 0});
}

TEST_CASE("wrap_offset stays in [-n/2, n/2)") {
  for (std::int64_t d = -20; d <= 20; ++d) {
    const auto w = wrap_offset(d, 8);
    CHECK(w >= -4);
    CHECK(w < 4);
    CHECK(((w - d) % 8 + 8) % 8 == 0);
  }
}

TEST_CASE("1D balls are half-open intervals") {
  const GridSpec g(1, 8.0, 8);
  int count = 0;
  for (std::int64_t d = -4; d < 4; ++d) count += in_ball(g, {d, 0}, 2.0);
  CHECK(count == 4);
  CHECK(in_ball(g, {-2, 0}, 2.0));
  CHECK_FALSE(in_ball(g, {2, 0}, 2.0));
}

TEST_CASE("2D ball boundary counts half the sphere") {
  const GridSpec g(2, 16.0, 16);
  int count = 0;
  for (std::int64_t dy = -8; dy < 8; ++dy) {
    for (std::int64_t dx = -8; dx < 8; ++dx) count += in_ball(g, {dx, dy}, 1.0);
  }
  // interior {0} plus two of the four unit-distance nodes
  CHECK(count == 3);
}
