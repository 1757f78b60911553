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

#include <cmath>

#include "specband/error.hpp"
#include "specband/symbol.hpp"

using namespace specband;

TEST_CASE("constant recipes fill every node") {
  const GridSpec g(1, 8.0, 8);
  const auto a = make_symbol(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 0.5);
  for (const auto& m : a.values()) CHECK(m.xx == 1.0);
  const GridSpec g2(2, 4.0, 8);
  const auto b = make_symbol(g2, ConstantRecipe{SymMatrix{1.0, 0.0, 4.0}}, 1.0);
  for (const auto& m : b.values()) CHECK(m == SymMatrix{1.0, 0.0, 4.0});
  CHECK(b.min_eigenvalue() == 1.0);
}

TEST_CASE("ellipticity floor is enforced") {
  const GridSpec g(1, 8.0, 8);
  CHECK_THROWS_AS(make_symbol(g, ConstantRecipe{SymMatrix::scalar(0.4)}, 0.5), ValidationError);
  const GridSpec g2(2, 4.0, 8);
  // eigenvalues 1 +- 2: indefinite
  CHECK_THROWS_AS(make_symbol(g2, ConstantRecipe{SymMatrix{1.0, 2.0, 1.0}}, 0.1), ValidationError);
  CHECK_THROWS_AS(make_symbol(g2, smooth_bandwidth_profile(1.0, 2.0, 4.0, 1), 0.5), ValidationError);
}

TEST_CASE("gaussian bump recipe") {
  const GridSpec g(1, 32.0, 1024);
  const auto a = make_symbol(g, AsymptoticallyConstantRecipe{SymMatrix::scalar(1.0), 3.0, 2.0, std::nullopt}, 0.5);
  CHECK(std::abs(a.at(0).xx - 1.0) <= 1e-9);
  CHECK(a.at(512).xx == doctest::Approx(4.0).epsilon(1e-15));
  for (const auto& m : a.values()) CHECK(m.xx >= 1.0);
}

TEST_CASE("slowly oscillating and variable bandwidth recipes stay elliptic") {
  const GridSpec g(1, 32.0, 256);
  const auto so = make_symbol(g, SlowlyOscillatingRecipe{}, 0.5);
  CHECK(so.min_eigenvalue() >= 1.0 - 1e-12);
  const auto vb = make_symbol(g, smooth_bandwidth_profile(1.0, 4.0, 32.0, 1), 0.5);
  CHECK(vb.at(0).xx == doctest::Approx(1.0));
  CHECK(vb.at(128).xx == doctest::Approx(4.0));
}

TEST_CASE("translation rotates node values") {
  const GridSpec g(1, 4.0, 4);
  std::vector<SymMatrix> v;
  for (double x : {1.0, 2.0, 3.0, 4.0}) v.push_back(SymMatrix::scalar(x));
  const SymbolField a(g, v, 0.5);
  const auto t = translate_symbol(a, Point{1.0, 0.0});
  CHECK(t.at(0).xx == 2.0);
  CHECK(t.at(1).xx == 3.0);
  CHECK(t.at(2).xx == 4.0);
  CHECK(t.at(3).xx == 1.0);
  CHECK_THROWS_AS(translate_symbol(a, Point{0.5, 0.0}), ValidationError);
}

TEST_CASE("translation is a group action, bit-exact") {
  const GridSpec g(2, 8.0, 16);
  const auto a = make_symbol(g, SlowlyOscillatingRecipe{}, 0.5);
  const NodeOffset x{3, -5}, y{-7, 2};
  CHECK(translate_symbol(translate_symbol(a, x), NodeOffset{-3, 5}) == a);
  CHECK(translate_symbol(translate_symbol(a, x), y) == translate_symbol(a, NodeOffset{x[0] + y[0], x[1] + y[1]}));
  const auto c = make_symbol(g, ConstantRecipe{SymMatrix{2.0, 0.5, 3.0}}, 0.5);
  CHECK(translate_symbol(c, x) == c);
}

TEST_CASE("oscillation heuristic") {
  const GridSpec g(1, 64.0, 512);
  const auto flat = oscillation_report(make_symbol(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 0.5), 4);
  for (const auto& an : flat.annuli) CHECK(an.sup_gradient == 0.0);
  CHECK(flat.verdict == OscillationVerdict::slowly_oscillating_like);
  for (std::size_t i = 1; i < flat.annuli.size(); ++i) CHECK(flat.annuli[i].radius > flat.annuli[i - 1].radius);

  const auto bump = oscillation_report(
      make_symbol(g, AsymptoticallyConstantRecipe{SymMatrix::scalar(1.0), 3.0, 2.0, std::nullopt}, 0.5), 4);
  double inner = 0.0;
  for (const auto& an : bump.annuli) inner = std::max(inner, an.sup_gradient);
  CHECK(bump.annuli.back().sup_gradient * 10.0 <= inner);
  CHECK(bump.verdict == OscillationVerdict::slowly_oscillating_like);

  const VariableBandwidthRecipe wave_recipe{
      [](double x) { return 2.0 + std::sin(2.0 * M_PI * 8.0 * x / 64.0); }, "wave"};
  const auto wave = oscillation_report(make_symbol(g, wave_recipe, 0.5), 4);
  CHECK(wave.verdict == OscillationVerdict::not_slowly_oscillating);
  CHECK_THROWS_AS(oscillation_report(make_symbol(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 0.5), 1), ValidationError);
}
