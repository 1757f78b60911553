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

#include "specband/error.hpp"
#include "specband/spectral.hpp"

using namespace specband;

namespace {

struct Setup {
  std::shared_ptr<const SymbolField> a;
  DiscreteOperator h;
  SpectralData s;
};

Setup build(const GridSpec& g, const SymbolRecipe& r, double omega) {
  auto a = std::make_shared<const SymbolField>(make_symbol(g, r, 0.5));
  auto h = discretize(*a);
  auto s = eigendecompose(h, omega);
  return {a, std::move(h), std::move(s)};
}

}  // namespace

TEST_CASE("eigenvalues of the unit-coefficient operator") {
  const GridSpec g(1, 32.0, 64);
  const auto st = build(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 1.0);
  std::vector<double> ref;
  for (int m = 0; m < 64; ++m) ref.push_back(16.0 * std::pow(std::sin(M_PI * m / 64.0), 2));
  std::sort(ref.begin(), ref.end());
  for (int m = 0; m < 64; ++m) CHECK(std::abs(st.s.eigenvalues()[m] - ref[m]) <= 1e-9);
  for (std::size_t m = 1; m < st.s.size(); ++m) CHECK(st.s.eigenvalues()[m] >= st.s.eigenvalues()[m - 1]);
}

TEST_CASE("eigenvectors are orthonormal and accurate") {
  const GridSpec g(1, 16.0, 128);
  const auto st = build(g, SlowlyOscillatingRecipe{}, 4.0);
  CHECK(orthonormality_defect(st.s) <= 1e-9);
  CHECK(eigen_residual(st.h, st.s) <= 1e-8);
  const GridSpec g2(2, 8.0, 12);
  const auto st2 = build(g2, AsymptoticallyConstantRecipe{SymMatrix{1.0, 0.25, 2.0}, 1.0, 1.0, {}}, 6.0);
  CHECK(orthonormality_defect(st2.s) <= 1e-9);
  CHECK(eigen_residual(st2.h, st2.s) <= 1e-8);
}

TEST_CASE("reproducing kernel is symmetric, idempotent and reproduces the band") {
  const GridSpec g(1, 16.0, 128);
  const auto st = build(g, smooth_bandwidth_profile(1.0, 3.0, 16.0, 1), 9.0);
  const auto k = reproducing_kernel(st.s);
  const double hd = g.cell_volume();
  CHECK(k.values == k.values.transpose());
  const Eigen::MatrixXd kk = hd * k.values * k.values;
  CHECK((kk - k.values).cwiseAbs().maxCoeff() <= 1e-8);
  const Eigen::MatrixXd band = st.s.band_modes();
  CHECK((hd * k.values * band - band).cwiseAbs().maxCoeff() <= 1e-8);
  for (double v : k.diagonal()) CHECK(v > 0.0);
  const auto d = k.diagonal();
  CHECK(*std::max_element(d.begin(), d.end()) <= 10.0 * *std::min_element(d.begin(), d.end()));
  CHECK(std::abs(hd * k.values.trace() - static_cast<double>(st.s.band_size())) <= 1e-9);
}

TEST_CASE("trivial and full bands") {
  const GridSpec g(1, 32.0, 64);
  const auto lowest = build(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 0.01);
  CHECK(lowest.s.band_size() == 1);
  const auto k0 = reproducing_kernel(lowest.s);
  CHECK((k0.values.array() - 1.0 / 32.0).abs().maxCoeff() <= 1e-12);

  const auto all = build(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 100.0);
  CHECK(all.s.band_size() == 64);
  const auto kf = reproducing_kernel(all.s);
  const Eigen::MatrixXd delta = Eigen::MatrixXd::Identity(64, 64) / g.spacing(0);
  CHECK((kf.values - delta).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("functional calculus with the band indicator equals the reproducing kernel") {
  const GridSpec g(1, 16.0, 64);
  const auto st = build(g, SlowlyOscillatingRecipe{}, 5.0);
  const double omega = st.s.omega();
  const auto chi = functional_calculus(st.s, [omega](double l) { return l <= omega ? 1.0 : 0.0; });
  CHECK(chi.values == reproducing_kernel(st.s).values);
  const auto diag = functional_diagonal(st.s, [](double l) { return std::exp(-0.5 * l); });
  const auto full = functional_calculus(st.s, [](double l) { return std::exp(-0.5 * l); });
  for (std::size_t i = 0; i < diag.size(); ++i) CHECK(std::abs(diag[i] - full.values(i, i)) <= 1e-12);
  CHECK_THROWS_AS(functional_calculus(st.s, [](double) { return std::nan(""); }), ValidationError);
}

TEST_CASE("heat kernel diagonal of the unit operator") {
  const GridSpec g(1, 32.0, 1024);
  const auto st = build(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 1.0);
  const auto hd = heat_diagonal(st.s, 1.0);
  for (double v : hd.diagonal) CHECK(v == doctest::Approx(0.282112014204960918).epsilon(1e-11));
  CHECK(hd.c_emp == doctest::Approx(0.282112014204960918).epsilon(1e-11));
  const auto hk = heat_kernel(st.s, 1.0);
  CHECK(hk.C_emp == doctest::Approx(hd.C_emp).epsilon(1e-12));
  // semigroup: p_{1/2} * p_{1/2} = p_1
  const auto half = heat_kernel(st.s, 0.5);
  const Eigen::MatrixXd p1 = g.cell_volume() * half.kernel.values * half.kernel.values;
  CHECK((p1 - hk.kernel.values).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("diagonal comparison with the heat kernel and dyadic bound") {
  const GridSpec g(1, 32.0, 256);
  for (const SymbolRecipe& r : {SymbolRecipe{SlowlyOscillatingRecipe{}},
                                SymbolRecipe{AsymptoticallyConstantRecipe{SymMatrix::scalar(1.0), 3.0, 2.0, {}}}}) {
    const auto st = build(g, r, M_PI * M_PI);
    const auto c = compker_check(st.s);
    CHECK(c.ok);
    CHECK(c.max_ratio <= 1.0);
    const auto dy = dyadic_lower_bound_check(st.s);
    CHECK(dy.ok);
    CHECK(dy.min_kernel_diagonal > 0.0);
    for (const auto& lv : dy.levels) CHECK(lv.min_slack >= -dy.tolerance);
  }
}

TEST_CASE("Bernstein ratios") {
  const GridSpec g(1, 32.0, 256);
  const auto st = build(g, SlowlyOscillatingRecipe{}, M_PI * M_PI);
  const std::size_t band = st.s.band_size();
  REQUIRE(band >= 3);
  const std::size_t m = band - 1;
  std::vector<double> c(band, 0.0);
  c[m] = 1.0;
  const auto r = bernstein_ratios(st.h, st.s, c, 4);
  const double q = st.s.eigenvalues()[m] / st.s.omega();
  for (int k = 1; k <= 4; ++k) CHECK(r[k - 1] == doctest::Approx(std::pow(q, k)).epsilon(1e-8));
  const auto rep = bernstein_check(st.h, st.s, 20, 4, 123);
  CHECK(rep.ok);
  for (double v : rep.max_ratio) CHECK(v <= 1.0 + rep.tolerance);
  const auto again = bernstein_check(st.h, st.s, 20, 4, 123);
  CHECK(again.max_ratio == rep.max_ratio);
}

TEST_CASE("eigensolver size cap") {
  const GridSpec g(1, 32.0, 64);
  const auto a = make_symbol(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 0.5);
  SpectralOptions opts;
  opts.max_size = 32;
  CHECK_THROWS_AS(eigendecompose(discretize(a), 1.0, opts), ResourceCapExceeded);
}
