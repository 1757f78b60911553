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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specband/error.hpp"
#include "specband/geometry.hpp"

using namespace specband;

TEST_CASE("integer grid has density exactly one at integer radii") {
  const GridSpec g(1, 32.0, 256);
  const auto s = generate_uniform(g, {1.0});
  CHECK(s.size() == 32);
  const std::vector<double> radii{1.0, 2.0, 4.0, 8.0};
  const auto c = beurling_density(s, lebesgue_weight(g), radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(c.inf[i] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.sup[i] == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(c.d_minus == doctest::Approx(1.0));
  CHECK(c.d_plus == doctest::Approx(1.0));
}

TEST_CASE("two-dimensional lattice densities bracket the step density") {
  const GridSpec g(2, 16.0, 32);
  const auto s = generate_uniform(g, {2.0});
  CHECK(s.size() == 64);
  const std::vector<double> radii{2.0, 4.0};
  const auto c = beurling_density(s, lebesgue_weight(g), radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(c.inf[i] <= 0.25 + 1e-12);
    CHECK(c.sup[i] >= 0.25 - 1e-12);
  }
}

TEST_CASE("density of the empty set and monotonicity in the set") {
  const GridSpec g(1, 32.0, 128);
  const PointSet empty(g, {});
  const std::vector<double> radii{1.0, 3.0, 8.0};
  const auto c0 = beurling_density(empty, lebesgue_weight(g), radii);
  for (double v : c0.sup) CHECK(v == 0.0);
  const auto a = generate_poisson(g, {0.7}, 5);
  std::vector<std::size_t> extra;
  for (std::size_t i = 0; i < g.size(); i += 7) {
    if (!std::binary_search(a.nodes().begin(), a.nodes().end(), i)) extra.push_back(i);
  }
  const auto b = a.merged(PointSet(g, extra));
  const auto ca = beurling_density(a, lebesgue_weight(g), radii);
  const auto cb = beurling_density(b, lebesgue_weight(g), radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(cb.inf[i] >= ca.inf[i]);
    CHECK(cb.sup[i] >= ca.sup[i]);
    CHECK(ca.inf[i] <= ca.sup[i]);
  }
}

TEST_CASE("radius cap") {
  const GridSpec g(1, 32.0, 128);
  const auto s = generate_uniform(g, {1.0});
  CHECK(density_radius_cap(g) == 8.0);
  const std::vector<double> bad{9.0};
  CHECK_THROWS_AS(beurling_density(s, lebesgue_weight(g), bad), ValidationError);
}

TEST_CASE("nu weight") {
  const GridSpec g(1, 16.0, 64);
  const auto w = nu_weight(make_symbol(g, ConstantRecipe{SymMatrix::scalar(4.0)}, 0.5));
  for (double v : w.values()) CHECK(v == 0.5);
  const GridSpec g2(2, 8.0, 8);
  const auto w2 = nu_weight(make_symbol(g2, ConstantRecipe{SymMatrix{1.0, 0.0, 4.0}}, 0.5));
  for (double v : w2.values()) CHECK(v == doctest::Approx(0.5));
  CHECK(ball_measure(w, 0, 2.0) == doctest::Approx(2.0));
}

TEST_CASE("nu-targeted sets") {
  const GridSpec g(1, 32.0, 256);
  const auto unit = generate_nu_targeted(make_symbol(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 0.5), {1.0});
  const auto grid = generate_uniform(g, {1.0});
  CHECK(std::equal(unit.nodes().begin(), unit.nodes().end(), grid.nodes().begin(), grid.nodes().end()));
  const auto wide = generate_nu_targeted(make_symbol(g, ConstantRecipe{SymMatrix::scalar(4.0)}, 0.5), {1.0});
  const auto step2 = generate_uniform(g, {2.0});
  CHECK(std::equal(wide.nodes().begin(), wide.nodes().end(), step2.nodes().begin(), step2.nodes().end()));
  const auto a = make_symbol(g, smooth_bandwidth_profile(1.0, 4.0, 32.0, 1), 0.5);
  const auto s = generate_nu_targeted(a, {1.0});
  const auto c = beurling_density(s, nu_weight(a), std::vector<double>{8.0});
  CHECK(c.inf[0] == doctest::Approx(1.0).epsilon(0.15));
  CHECK(c.sup[0] == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("separation") {
  const GridSpec g(1, 32.0, 256);
  const auto s = generate_uniform(g, {1.0});
  CHECK(separation_report(s, 0.5) == 1);
  CHECK(separation_report(s, 1.0) == 2);
  CHECK(separation_report(PointSet(g, {}), 1.0) == 0);
}

TEST_CASE("random generators are reproducible") {
  const GridSpec g(2, 8.0, 16);
  const auto a = generate_poisson(g, {1.0}, 77);
  const auto b = generate_poisson(g, {1.0}, 77);
  CHECK(std::equal(a.nodes().begin(), a.nodes().end(), b.nodes().begin(), b.nodes().end()));
  const auto j1 = generate_jittered(g, {1.0, 0.2}, 3);
  const auto j2 = generate_jittered(g, {1.0, 0.2}, 3);
  CHECK(std::equal(j1.nodes().begin(), j1.nodes().end(), j2.nodes().begin(), j2.nodes().end()));
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a.nodes()[i] > a.nodes()[i - 1]);
}

TEST_CASE("point set file round trip") {
  for (int dim : {1, 2}) {
    const GridSpec g(dim, 8.0, 16);
    const auto s = generate_jittered(g, {1.0, 0.3}, 11);
    std::ostringstream os;
    write_pointset(os, s);
    CHECK(os.str().rfind("# specband pointset v1 dim=" + std::to_string(dim) + " L=", 0) == 0);
    std::istringstream is(os.str());
    const auto back = read_pointset(is, g);
    CHECK(std::equal(s.nodes().begin(), s.nodes().end(), back.nodes().begin(), back.nodes().end()));
    CHECK(back.seed() == 11);
  }
  const GridSpec g(1, 8.0, 16);
  std::istringstream off("# specband pointset v1 dim=1 L=8 seed=0\n0.3\n");
  CHECK_THROWS_AS(read_pointset(off, g), ValidationError);
  std::istringstream nohdr("0.5\n");
  CHECK_THROWS_AS(read_pointset(nohdr, g), ValidationError);
}

TEST_CASE("averaged trace of a constant field is the constant") {
  const GridSpec g(1, 16.0, 64);
  const std::vector<double> f(g.size(), 0.75);
  const auto c = averaged_trace(f, lebesgue_weight(g), std::vector<double>{1.0, 2.5});
  for (double v : c.inf) CHECK(v == doctest::Approx(0.75));
  for (double v : c.sup) CHECK(v == doctest::Approx(0.75));
}
