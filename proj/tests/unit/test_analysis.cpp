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
#include <memory>

#include "specband/analysis.hpp"
#include "specband/error.hpp"

using namespace specband;

namespace {

SpectralData spectrum(const SymbolField& a, double omega) { return eigendecompose(discretize(a), omega); }

PointSet all_nodes(const GridSpec& g) {
  std::vector<std::size_t> n(g.size());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = i;
  return {g, n};
}

}  // namespace

TEST_CASE("sampling on every node of a unit-spacing grid is tight") {
  const GridSpec g(1, 32.0, 32);
  const auto s = spectrum(make_symbol(g, SlowlyOscillatingRecipe{}, 0.5), 2.0);
  const auto r = frame_bounds(all_nodes(g), s);
  CHECK(r.a == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.b_upper == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.stable_sampling);
}

TEST_CASE("undersampled band has zero lower bound") {
  const GridSpec g(1, 32.0, 1024);
  const auto s = spectrum(make_symbol(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 0.5), M_PI * M_PI);
  REQUIRE(s.band_size() == 33);
  const auto r = frame_bounds(generate_uniform(g, {1.0}), s);
  CHECK(r.points == 32);
  CHECK(r.a == 0.0);
  CHECK_FALSE(r.stable_sampling);
  CHECK(r.b_upper > 0.0);
}

TEST_CASE("frame bounds grow when points are added") {
  const GridSpec g(1, 16.0, 128);
  const auto s = spectrum(make_symbol(g, smooth_bandwidth_profile(1.0, 3.0, 16.0, 1), 0.5), 4.0);
  auto small = generate_uniform(g, {0.5});
  const auto big_full = small.merged(PointSet(g, {1, 3}));
  const auto a = frame_bounds(small, s);
  const auto b = frame_bounds(big_full, s);
  CHECK(b.a_raw >= a.a_raw - 1e-12);
  CHECK(b.b_upper >= a.b_upper - 1e-12);
  CHECK(a.a <= a.b_upper);
}

TEST_CASE("Riesz bound matches the frame Gram") {
  const GridSpec g(1, 16.0, 128);
  const auto s = spectrum(make_symbol(g, SlowlyOscillatingRecipe{}, 0.5), 9.0);
  const auto k = reproducing_kernel(s);
  const auto pts = generate_uniform(g, {2.0});
  const auto rr = riesz_lower_bound(pts, k);
  const auto fr = frame_bounds(pts, s);
  CHECK(rr.lambda_min == doctest::Approx(fr.riesz_min).epsilon(1e-8).scale(1.0));
  CHECK(rr.lambda_min >= -1e-10);
}

TEST_CASE("localization tails") {
  const GridSpec g(1, 32.0, 64);
  const auto full = spectrum(make_symbol(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 0.5), 100.0);
  const auto delta = reproducing_kernel(full);
  const std::vector<double> radii{0.0, 1.0, 4.0};
  for (double v : weak_localization_curve(delta, radii).values) CHECK(std::abs(v) <= 1e-18);

  const auto s = spectrum(make_symbol(g, SlowlyOscillatingRecipe{}, 0.5), 4.0);
  const auto k = reproducing_kernel(s);
  const std::vector<double> r2{0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 15.5};
  const auto wl = weak_localization_curve(k, r2);
  CHECK(nonincreasing(wl));
  CHECK(wl.values.front() > wl.values.back());
  CHECK_THROWS_AS(weak_localization_curve(k, std::vector<double>{16.0}), ValidationError);

  for (double v : hap_check(k, PointSet(g, {}), r2).values) CHECK(v == 0.0);
  const PointSet s1(g, {0, 5, 17}), s2(g, {30, 40, 63});
  const auto h1 = hap_check(k, s1, r2), h2 = hap_check(k, s2, r2), h12 = hap_check(k, s1.merged(s2), r2);
  CHECK(nonincreasing(h12));
  for (std::size_t i = 0; i < r2.size(); ++i) {
    CHECK(h12.values[i] <= h1.values[i] + h2.values[i] + 1e-15);
    CHECK(h12.values[i] >= std::max(h1.values[i], h2.values[i]) - 1e-15);
  }
  CHECK(nonincreasing(Curve{{1, 2, 3}, {3, 3, 1}}));
  CHECK_FALSE(nonincreasing(Curve{{1, 2, 3}, {3, 1, 2}}));
}

TEST_CASE("approximate identity") {
  const GridSpec g(1, 16.0, 128);
  const auto s = spectrum(make_symbol(g, SlowlyOscillatingRecipe{}, 0.5), 4.0);
  const auto k = reproducing_kernel(s);
  const double h = g.spacing(0);
  const auto r = approx_identity_check(s, k, std::vector<double>{h, 3 * h, 9 * h, 27 * h});
  CHECK(r.errors[0] == 0.0);
  for (std::size_t i = 1; i < r.errors.size(); ++i) CHECK(r.errors[i] > r.errors[i - 1]);
  CHECK(r.ok);
  CHECK_THROWS_AS(approx_identity_check(s, k, std::vector<double>{2 * h}), ValidationError);
}

TEST_CASE("limit kernel of an unperturbed symbol is exact") {
  const GridSpec g(1, 32.0, 256);
  const SymMatrix b = SymMatrix::scalar(1.0);
  const auto a = make_symbol(g, AsymptoticallyConstantRecipe{b, 0.0, 1.0, {}}, 0.5);
  const auto s = spectrum(a, M_PI * M_PI * 0.9);
  const auto k = reproducing_kernel(s);
  const auto r = limit_kernel_convergence(a, s, k, b, {16.0, 0.0}, 1.0, std::vector<double>{2.0, 4.0, 8.0});
  for (double v : r.l2_differences) CHECK(v <= 1e-8);
  CHECK(r.limit_diagonal == doctest::Approx(std::sqrt(0.9)));
  CHECK_THROWS_AS(limit_kernel_convergence(a, s, k, b, {16.0, 0.0}, 3.0, std::vector<double>{2.0}), ValidationError);
}
