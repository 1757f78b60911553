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

#include "specband/constcoef.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_gamma.h>

#include <Eigen/Dense>

#include "specband/error.hpp"
#include "specband/geometry.hpp"

namespace specband {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSeriesCutoff = 1e-6;
}  // namespace

void Ellipsoid::validate() const {
  if (dim != 1 && dim != 2) throw ValidationError("ellipsoid dimension must be 1 or 2");
  if (!(omega > 0.0)) throw ValidationError("ellipsoid Omega must be positive");
  if (!(b.min_eigenvalue(dim) > 0.0)) throw ValidationError("ellipsoid matrix b must be positive definite");
}

double unit_ball_volume(int dim) { return dim == 1 ? 2.0 : kPi; }

double ellipsoid_volume(const Ellipsoid& e) {
  e.validate();
  return std::pow(e.b.determinant(e.dim), -0.5) * std::pow(e.omega, 0.5 * e.dim) * unit_ball_volume(e.dim);
}

double pw_kernel_exact(const Ellipsoid& e, Point u) {
  e.validate();
  const double det_factor = std::pow(e.b.determinant(e.dim), -0.5);
  const double R = std::sqrt(e.omega);
  if (e.dim == 1) {
    const double v = u[0] / std::sqrt(e.b.xx);
    if (std::abs(u[0]) < kSeriesCutoff) {
      const double z2 = (R * v) * (R * v);
      return det_factor * (R / kPi) * (1.0 - z2 / 6.0 + z2 * z2 / 120.0 - z2 * z2 * z2 / 5040.0);
    }
    return det_factor * std::sin(R * v) / (kPi * v);
  }
  Eigen::Matrix2d b;
  b << e.b.xx, e.b.xy, e.b.xy, e.b.yy;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(b);
  const Eigen::Matrix2d b_inv_sqrt = es.operatorInverseSqrt();
  const Eigen::Vector2d v = b_inv_sqrt * Eigen::Vector2d(u[0], u[1]);
  const double r = v.norm();
  const double disc = R * R / (2.0 * kPi);  // R^2 / (2 pi) * (J_1(z) / z)
  if (std::hypot(u[0], u[1]) < kSeriesCutoff) {
    const double z2 = (R * r) * (R * r);
    return det_factor * disc * (0.5 - z2 / 16.0 + z2 * z2 / 384.0 - z2 * z2 * z2 / 18432.0);
  }
  return det_factor * R * std::cyl_bessel_j(1.0, R * r) / (2.0 * kPi * r);
}

namespace {

template <class Fn>
void for_each_mode(const Ellipsoid& e, std::array<double, 2> L, Fn&& fn) {
  e.validate();
  if (e.dim == 2 && e.b.xy != 0.0) {
    throw ValidationError("periodic Paley-Wiener kernel needs a diagonal b");
  }
  const double limit = e.omega * (1.0 + 1e-12);
  const double k0 = 2.0 * kPi / L[0];
  const auto m0 = static_cast<long>(std::floor(std::sqrt(limit / e.b.xx) / k0)) + 1;
  if (e.dim == 1) {
    for (long m = -m0; m <= m0; ++m) {
      const double xi = k0 * static_cast<double>(m);
      if (e.b.xx * xi * xi <= limit) fn(xi, 0.0);
    }
    return;
  }
  const double k1 = 2.0 * kPi / L[1];
  const auto m1 = static_cast<long>(std::floor(std::sqrt(limit / e.b.yy) / k1)) + 1;
  for (long j = -m1; j <= m1; ++j) {
    const double eta = k1 * static_cast<double>(j);
    for (long m = -m0; m <= m0; ++m) {
      const double xi = k0 * static_cast<double>(m);
      if (e.b.xx * xi * xi + e.b.yy * eta * eta <= limit) fn(xi, eta);
    }
  }
}

double torus_volume(const Ellipsoid& e, std::array<double, 2> L) {
  return e.dim == 1 ? L[0] : L[0] * L[1];
}

}  // namespace

double periodic_pw_kernel(const Ellipsoid& e, std::array<double, 2> L, Point u) {
  double sum = 0.0;
  for_each_mode(e, L, [&](double xi, double eta) { sum += std::cos(xi * u[0] + eta * u[1]); });
  return sum / torus_volume(e, L);
}

long periodic_mode_count(const Ellipsoid& e, std::array<double, 2> L) {
  long count = 0;
  for_each_mode(e, L, [&](double, double) { ++count; });
  return count;
}

namespace {

struct GslWorkspace {
  explicit GslWorkspace(std::size_t n) : w(gsl_integration_workspace_alloc(n)) {}
  ~GslWorkspace() { gsl_integration_workspace_free(w); }
  GslWorkspace(const GslWorkspace&) = delete;
  GslWorkspace& operator=(const GslWorkspace&) = delete;
  gsl_integration_workspace* w;
};

struct GslQawoTable {
  GslQawoTable(double omega, std::size_t levels)
      : t(gsl_integration_qawo_table_alloc(omega, 1.0, GSL_INTEG_COSINE, levels)) {}
  ~GslQawoTable() { gsl_integration_qawo_table_free(t); }
  GslQawoTable(const GslQawoTable&) = delete;
  GslQawoTable& operator=(const GslQawoTable&) = delete;
  gsl_integration_qawo_table* t;
};

void check_gsl(int status, const char* what) {
  if (status != GSL_SUCCESS) {
    std::ostringstream os;
    os << what << ": " << gsl_strerror(status);
    throw NumericalError(os.str());
  }
}

struct GslErrorGuard {
  GslErrorGuard() : prev(gsl_set_error_handler_off()) {}
  ~GslErrorGuard() { gsl_set_error_handler(prev); }
  gsl_error_handler_t* prev;
};

// (2 pi)^{-1/2} int_R cos(u w) (1 + w^2)^{-s} dw.
double fourier_gram_1d(double s, double u) {
  GslErrorGuard guard;
  auto integrand = [](double w, void* p) { return std::pow(1.0 + w * w, -*static_cast<double*>(p)); };
  gsl_function f{+integrand, &s};
  double result = 0.0, abserr = 0.0;
  constexpr std::size_t limit = 2000;
  GslWorkspace ws(limit);
  if (u == 0.0) {
    check_gsl(gsl_integration_qagiu(&f, 0.0, 1e-14, 1e-12, limit, ws.w, &result, &abserr),
              "Sobolev Gramian quadrature (u = 0)");
  } else {
    GslWorkspace cycles(limit);
    GslQawoTable table(std::abs(u), 50);
    check_gsl(gsl_integration_qawf(&f, 0.0, 1e-13, limit, ws.w, cycles.w, table.t, &result, &abserr),
              "Sobolev Gramian Fourier quadrature");
  }
  return 2.0 * result / std::sqrt(2.0 * kPi);
}

// (1/Gamma(s)) int_0^inf t^{s-1} e^{-t} (2t)^{-d/2} e^{-u^2/(4t)} dt, the same
// Fourier integral written through e^{-t(1+|w|^2)} subordination.
double subordinated_gram(double s, int dim, double u) {
  GslErrorGuard guard;
  struct Params {
    double s;
    double half_d;
    double u2;
  } p{s, 0.5 * dim, u * u};
  auto integrand = [](double t, void* vp) {
    const auto* q = static_cast<const Params*>(vp);
    if (t <= 0.0) return 0.0;
    return std::exp((q->s - 1.0 - q->half_d) * std::log(t) - t - q->u2 / (4.0 * t)) *
           std::pow(2.0, -q->half_d);
  };
  gsl_function f{+integrand, &p};
  constexpr std::size_t limit = 2000;
  GslWorkspace ws(limit);
  double head = 0.0, tail = 0.0, err = 0.0;
  // Split at t = 1: the t -> 0 end may carry an integrable singularity.
  check_gsl(gsl_integration_qags(&f, 0.0, 1.0, 1e-15, 1e-12, limit, ws.w, &head, &err),
            "Sobolev Gramian quadrature (head)");
  check_gsl(gsl_integration_qagiu(&f, 1.0, 1e-15, 1e-12, limit, ws.w, &tail, &err),
            "Sobolev Gramian quadrature (tail)");
  return (head + tail) / gsl_sf_gamma(s);
}

}  // namespace

double sobolev_kernel_gram_quadrature(double s, int dim, double u) {
  if (dim != 1 && dim != 2) throw ValidationError("Sobolev Gramian supports d = 1, 2");
  if (!(s > 0.5 * dim)) throw ValidationError("Sobolev Gramian requires s > d/2");
  u = std::abs(u);
  return dim == 1 ? fourier_gram_1d(s, u) : subordinated_gram(s, dim, u);
}

double sobolev_kernel_gram(double s, int dim, double u) {
  if (dim != 1 && dim != 2) throw ValidationError("Sobolev Gramian supports d = 1, 2");
  if (!(s > 0.5 * dim)) throw ValidationError("Sobolev Gramian requires s > d/2");
  u = std::abs(u);
  const double root = std::sqrt(kPi / 2.0);
  if (dim == 1 && s == 1.0) return root * std::exp(-u);
  if (dim == 1 && s == 2.0) return 0.5 * root * (1.0 + u) * std::exp(-u);
  if (dim == 2 && s == 1.5) return std::exp(-u);
  if (dim == 2 && s == 2.5) return (1.0 + u) * std::exp(-u) / 3.0;
  return sobolev_kernel_gram_quadrature(s, dim, u);
}

double schur_row_bound(const PointSet& points, double s) {
  const auto& g = points.grid();
  const auto nodes = points.nodes();
  std::map<double, double> cache;
  auto gram = [&](double d2) {
    auto it = cache.find(d2);
    if (it != cache.end()) return it->second;
    const double v = std::abs(sobolev_kernel_gram(s, g.dim(), std::sqrt(d2)));
    cache.emplace(d2, v);
    return v;
  };
  double worst = 0.0;
  for (std::size_t a : nodes) {
    double row = 0.0;
    for (std::size_t b : nodes) row += gram(g.offset_length_sq(g.offset(a, b)));
    worst = std::max(worst, row);
  }
  return worst;
}

}  // namespace specband
