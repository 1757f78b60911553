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
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "specband/error.hpp"
#include "specband/op.hpp"

using namespace specband;

namespace {

double quad_form(const CsrMatrix& h, const std::vector<double>& v) {
  const auto hv = h.apply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * hv[i];
  return s;
}

}  // namespace

TEST_CASE("unit coefficient gives the periodic second difference") {
  const GridSpec g(1, 4.0, 4);
  const auto h = discretize(make_symbol(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 0.5));
  const Eigen::MatrixXd d = h.matrix().to_dense();
  Eigen::MatrixXd expected(4, 4);
  expected << 2, -1, 0, -1, -1, 2, -1, 0, 0, -1, 2, -1, -1, 0, -1, 2;
  CHECK(d == expected);
}

TEST_CASE("circulant eigenvalues") {
  const GridSpec g(1, 32.0, 64);
  const auto h = discretize(make_symbol(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 0.5));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix().to_dense(), Eigen::EigenvaluesOnly);
  std::vector<double> ref;
  const double hh = g.spacing(0);
  for (int m = 0; m < 64; ++m) ref.push_back(4.0 / (hh * hh) * std::pow(std::sin(M_PI * m / 64.0), 2));
  std::sort(ref.begin(), ref.end());
  for (int m = 0; m < 64; ++m) CHECK(es.eigenvalues()(m) == doctest::Approx(ref[m]).epsilon(1e-9).scale(1.0));
}

TEST_CASE("structural symmetry, zero row sums, positive semidefinite") {
  for (int dim : {1, 2}) {
    CAPTURE(dim);
    const GridSpec g(dim, 8.0, dim == 1 ? 64 : 16);
    const SymbolRecipe r =
        dim == 1 ? SymbolRecipe{SlowlyOscillatingRecipe{}}
                 : SymbolRecipe{AsymptoticallyConstantRecipe{SymMatrix{1.0, 0.3, 2.0}, 1.0, 1.0, {}}};
    const auto h = discretize(make_symbol(g, r, 0.5));
    CHECK(h.matrix().max_asymmetry() == 0.0);
    const std::vector<double> ones(g.size(), 1.0);
    for (double v : h.apply(ones)) CHECK(std::abs(v) <= 1e-12 * h.matrix().max_abs());
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    for (int t = 0; t < 20; ++t) {
      std::vector<double> v(g.size());
      for (auto& x : v) x = nd(rng);
      CHECK(quad_form(h.matrix(), v) >= -1e-10 * h.matrix().max_abs());
    }
  }
}

TEST_CASE("ellipticity transfers to the quadratic form") {
  const GridSpec g(2, 8.0, 16);
  const double theta = 0.5;
  const auto a = make_symbol(g, AsymptoticallyConstantRecipe{SymMatrix{1.0, 0.25, 2.0}, 1.5, 1.2, {}}, theta);
  const auto h = discretize(a);
  const auto h1 = discretize(make_symbol(g, ConstantRecipe{SymMatrix::scalar(theta)}, theta));
  std::mt19937_64 rng(99);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> v(g.size());
    double mean = 0.0;
    for (auto& x : v) mean += (x = nd(rng));
    mean /= static_cast<double>(v.size());
    for (auto& x : v) x -= mean;
    CHECK(quad_form(h.matrix(), v) >= quad_form(h1.matrix(), v) * (1.0 - 1e-12));
  }
}

TEST_CASE("second-order consistency on a sine") {
  auto error = [](std::int64_t n) {
    const double L = 8.0;
    const GridSpec g(1, L, n);
    const auto h = discretize(make_symbol(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 0.5));
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sin(2.0 * M_PI * g.position(i)[0] / L);
    const auto hf = h.apply(f);
    const double k2 = std::pow(2.0 * M_PI / L, 2);
    double e = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) e = std::max(e, std::abs(hf[i] - k2 * f[i]));
    return e;
  };
  const double ratio = error(32) / error(64);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("conjugation by translation is bit-exact") {
  const GridSpec g(1, 8.0, 8);
  const auto a = make_symbol(g, smooth_bandwidth_profile(1.0, 3.0, 8.0, 1), 0.5);
  const auto h = discretize(a);
  const auto c = conjugated_operator(a, NodeOffset{1, 0});
  CHECK(c.matrix() == permute_conjugate(g, h.matrix(), NodeOffset{1, 0}));
  CHECK(conjugated_operator(a, NodeOffset{0, 0}).matrix() == h.matrix());
  const auto flat = make_symbol(g, ConstantRecipe{SymMatrix::scalar(2.0)}, 0.5);
  CHECK(conjugated_operator(flat, NodeOffset{3, 0}).matrix() == discretize(flat).matrix());

  const GridSpec g2(2, 8.0, 16);
  const auto a2 = make_symbol(g2, AsymptoticallyConstantRecipe{SymMatrix{1.0, 0.3, 2.0}, 1.0, 1.0, {}}, 0.5);
  for (NodeOffset s : {NodeOffset{1, 0}, NodeOffset{0, 3}, NodeOffset{-5, 7}}) {
    CHECK(conjugated_operator(a2, s).matrix() == permute_conjugate(g2, discretize(a2).matrix(), s));
  }
}

TEST_CASE("coordinate export") {
  const GridSpec g(1, 4.0, 4);
  const auto h = discretize(make_symbol(g, ConstantRecipe{SymMatrix::scalar(1.0)}, 0.5));
  std::ostringstream os;
  write_coordinate(os, h.matrix());
  std::istringstream is(os.str());
  std::size_t r, c, lines = 0;
  double v;
  while (is >> r >> c >> v) {
    CHECK(v == h.matrix().at(r, c));
    ++lines;
  }
  CHECK(lines == h.matrix().vals.size());
  CHECK(os.str().rfind("0 0 2\n", 0) == 0);
}
