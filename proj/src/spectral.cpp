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

#include "specband/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <lapacke.h>

#include "specband/error.hpp"
#include "specband/simd/kernels.hpp"

namespace specband {

SpectralData::SpectralData(GridSpec grid, std::vector<double> eigenvalues, Eigen::MatrixXd modes,
                           double omega, std::vector<std::string> warnings)
    : grid_(grid),
      eigenvalues_(std::move(eigenvalues)),
      modes_(std::move(modes)),
      omega_(omega),
      warnings_(std::move(warnings)) {
  band_size_ = static_cast<std::size_t>(
      std::upper_bound(eigenvalues_.begin(), eigenvalues_.end(), omega_) - eigenvalues_.begin());
  margin_ = std::numeric_limits<double>::infinity();
  for (double l : eigenvalues_) margin_ = std::min(margin_, std::abs(l - omega_));
}

SpectralData eigendecompose(const DiscreteOperator& h, double omega, const SpectralOptions& opts) {
  if (!(omega > 0.0)) throw ValidationError("Omega must be positive");
  const std::size_t n = h.size();
  if (n > opts.max_size) {
    std::ostringstream os;
    os << "operator size " << n << " exceeds the eigensolver cap " << opts.max_size;
    throw ResourceCapExceeded(os.str());
  }
  Eigen::MatrixXd a = h.matrix().to_dense();
  std::vector<double> w(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', static_cast<lapack_int>(n), a.data(),
                                         static_cast<lapack_int>(n), w.data());
  if (info != 0) {
    throw NumericalError("dsyevd failed to converge (info = " + std::to_string(info) + ")");
  }
  const double norm = std::max(std::abs(w.front()), std::abs(w.back()));
  if (w.front() < -1e-8 * norm) {
    std::ostringstream os;
    os << "operator is not positive semidefinite: lambda_0 = " << w.front();
    throw CheckFailure(os.str());
  }
  a *= 1.0 / std::sqrt(h.grid().cell_volume());

  double margin = std::numeric_limits<double>::infinity();
  for (double l : w) margin = std::min(margin, std::abs(l - omega));
  std::vector<std::string> warnings;
  if (margin < opts.margin_rel * omega) {
    std::ostringstream os;
    os << "spectral margin " << margin << " below " << opts.margin_rel << " * Omega; "
       << "band contents are unstable";
    warnings.push_back(os.str());
  }
  return SpectralData(h.grid(), std::move(w), std::move(a), omega, std::move(warnings));
}

std::vector<double> KernelMatrix::diagonal() const {
  std::vector<double> d(size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
  return d;
}

namespace {

// k_ij = sum_m w_m phi_m(i) phi_m(j) over modes with w_m != 0. Upper triangle
// computed, lower mirrored, so the result is exactly symmetric.
Eigen::MatrixXd assemble_kernel(const SpectralData& s, std::span<const double> weights) {
  const std::size_t n = s.size();
  std::vector<Eigen::Index> selected;
  for (std::size_t m = 0; m < weights.size(); ++m) {
    if (weights[m] != 0.0) selected.push_back(static_cast<Eigen::Index>(m));
  }
  const std::size_t q = selected.size();
  std::vector<double> rows(n * q), scaled(n * q);
  for (std::size_t k = 0; k < q; ++k) {
    const auto col = s.modes().col(selected[k]);
    const double wk = weights[static_cast<std::size_t>(selected[k])];
    for (std::size_t i = 0; i < n; ++i) {
      const double v = col(static_cast<Eigen::Index>(i));
      rows[i * q + k] = v;
      scaled[i * q + k] = wk * v;
    }
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const auto& kt = simd::active();
  for (std::size_t i = 0; i < n; ++i) {
    const double* ri = rows.data() + i * q;
    for (std::size_t j = i; j < n; ++j) {
      const double v = kt.dot(ri, scaled.data() + j * q, q);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return out;
}

std::vector<double> spectral_weights(const SpectralData& s, const std::function<double(double)>& f) {
  std::vector<double> w(s.size());
  for (std::size_t m = 0; m < w.size(); ++m) {
    w[m] = f(s.eigenvalues()[m]);
    if (!std::isfinite(w[m])) {
      std::ostringstream os;
      os << "F is not finite at eigenvalue " << s.eigenvalues()[m];
      throw ValidationError(os.str());
    }
  }
  return w;
}

std::vector<double> weighted_diagonal(const SpectralData& s, std::span<const double> w) {
  std::vector<double> d(s.size(), 0.0);
  for (std::size_t m = 0; m < w.size(); ++m) {
    if (w[m] == 0.0) continue;
    const auto col = s.modes().col(static_cast<Eigen::Index>(m));
    simd::accumulate_weighted_squares(d, {col.data(), d.size()}, w[m]);
  }
  return d;
}

std::vector<double> band_indicator(const SpectralData& s) {
  std::vector<double> w(s.size(), 0.0);
  std::fill_n(w.begin(), s.band_size(), 1.0);
  return w;
}

double weighted_norm(const GridSpec& g, std::span<const double> v) {
  return std::sqrt(g.cell_volume() * simd::sum_squares(v));
}

}  // namespace

KernelMatrix reproducing_kernel(const SpectralData& s) {
  const auto w = band_indicator(s);
  return {s.grid(), s.omega(), assemble_kernel(s, w), "reproducing_kernel"};
}

KernelMatrix functional_calculus(const SpectralData& s, const std::function<double(double)>& f) {
  const auto w = spectral_weights(s, f);
  return {s.grid(), s.omega(), assemble_kernel(s, w), "functional_calculus"};
}

std::vector<double> functional_diagonal(const SpectralData& s, const std::function<double(double)>& f) {
  return weighted_diagonal(s, spectral_weights(s, f));
}

namespace {
std::pair<double, double> heat_constants(const GridSpec& g, std::span<const double> diag, double t) {
  const auto [lo, hi] = std::minmax_element(diag.begin(), diag.end());
  const double scale = std::pow(t, 0.5 * g.dim());
  return {scale * *lo, scale * *hi};
}
}  // namespace

HeatKernel heat_kernel(const SpectralData& s, double t) {
  if (!(t > 0.0)) throw ValidationError("heat kernel time must be positive");
  HeatKernel hk;
  hk.t = t;
  hk.kernel = functional_calculus(s, [t](double u) { return std::exp(-t * u); });
  hk.kernel.provenance = "heat_kernel";
  const auto d = hk.kernel.diagonal();
  std::tie(hk.c_emp, hk.C_emp) = heat_constants(s.grid(), d, t);
  return hk;
}

HeatDiagonal heat_diagonal(const SpectralData& s, double t) {
  if (!(t > 0.0)) throw ValidationError("heat kernel time must be positive");
  HeatDiagonal hd;
  hd.t = t;
  hd.diagonal = functional_diagonal(s, [t](double u) { return std::exp(-t * u); });
  std::tie(hd.c_emp, hd.C_emp) = heat_constants(s.grid(), hd.diagonal, t);
  return hd;
}

CompkerReport compker_check(const SpectralData& s) {
  const auto k = weighted_diagonal(s, band_indicator(s));
  const auto p = heat_diagonal(s, 1.0 / s.omega()).diagonal;
  CompkerReport rep;
  rep.min_slack = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double rhs = std::numbers::e * p[i];
    rep.min_slack = std::min(rep.min_slack, rhs - k[i]);
    rep.max_ratio = std::max(rep.max_ratio, k[i] / rhs);
    scale = std::max(scale, rhs);
  }
  rep.ok = rep.min_slack >= -1e-12 * scale;
  return rep;
}

std::vector<double> bernstein_ratios(const DiscreteOperator& h, const SpectralData& s,
                                     std::span<const double> coeffs, int k_max) {
  const std::size_t n = s.size();
  const std::size_t band = s.band_size();
  if (coeffs.size() != band) throw ValidationError("coefficient count must equal the band dimension");
  const auto phi = s.band_modes();
  const double hd = s.grid().cell_volume();

  Eigen::Map<const Eigen::VectorXd> c(coeffs.data(), static_cast<Eigen::Index>(band));
  Eigen::VectorXd g = phi * c;
  const double f_norm = weighted_norm(s.grid(), {g.data(), n});
  std::vector<double> ratios;
  Eigen::VectorXd hg(static_cast<Eigen::Index>(n));
  double omega_k = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    h.matrix().apply({g.data(), n}, {hg.data(), n});
    const Eigen::VectorXd proj = hd * (phi.transpose() * hg);
    g = phi * proj;
    omega_k *= s.omega();
    ratios.push_back(weighted_norm(s.grid(), {g.data(), n}) / (omega_k * f_norm));
  }
  return ratios;
}

BernsteinReport bernstein_check(const DiscreteOperator& h, const SpectralData& s, int trials, int k_max,
                                std::uint64_t seed) {
  if (trials < 1 || k_max < 1) throw ValidationError("bernstein_check needs trials >= 1 and k_max >= 1");
  BernsteinReport rep;
  rep.seed = seed;
  rep.trials = trials;
  rep.k_max = k_max;
  rep.spectral_margin = s.spectral_margin();
  rep.max_ratio.assign(static_cast<std::size_t>(k_max), 0.0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> c(s.band_size());
  for (int trial = 0; trial < trials; ++trial) {
    for (double& v : c) v = normal(rng);
    const auto r = bernstein_ratios(h, s, c, k_max);
    for (int k = 0; k < k_max; ++k) rep.max_ratio[k] = std::max(rep.max_ratio[k], r[k]);
  }
  rep.ok = std::all_of(rep.max_ratio.begin(), rep.max_ratio.end(),
                       [&](double r) { return r <= 1.0 + rep.tolerance; });
  return rep;
}

DyadicReport dyadic_lower_bound_check(const SpectralData& s) {
  DyadicReport rep;
  const double omega = s.omega();
  const double lmax = s.max_eigenvalue();
  rep.sufficient_range = lmax >= 8.0 * omega;
  if (!rep.sufficient_range) {
    rep.warnings.push_back("insufficient spectral range: lambda_max < 8 Omega");
  }
  const std::size_t n = s.size();
  const auto evs = s.eigenvalues();

  // Dyadic terms k = 0..K-1 with 2^k Omega < lambda_max; beyond that every
  // spectral indicator in the sum is already the full identity.
  int K = 0;
  while (std::ldexp(omega, K) < lmax) ++K;

  // Diagonals of chi_[0, 2^{k+1} Omega](H), accumulated in ascending eigenvalue order.
  std::vector<std::vector<double>> proj(static_cast<std::size_t>(K), std::vector<double>(n, 0.0));
  {
    std::vector<double> acc(n, 0.0);
    std::size_t m = 0;
    for (int k = 0; k < K; ++k) {
      const double thr = std::ldexp(omega, k + 1);
      for (; m < evs.size() && evs[m] <= thr; ++m) {
        simd::accumulate_weighted_squares(acc, {s.modes().col(static_cast<Eigen::Index>(m)).data(), n}, 1.0);
      }
      proj[static_cast<std::size_t>(k)] = acc;
    }
  }
  const auto kdiag = weighted_diagonal(s, band_indicator(s));
  rep.min_kernel_diagonal = *std::min_element(kdiag.begin(), kdiag.end());

  double scale = 0.0;
  bool slack_ok = true;
  for (int r = 0; r <= 3; ++r) {
    DyadicReport::Level lv;
    lv.r = r;
    lv.t = std::ldexp(1.0, r) / omega;
    lv.terms = K;
    const auto p = heat_diagonal(s, lv.t).diagonal;
    lv.min_slack = std::numeric_limits<double>::infinity();
    lv.implied_lower_bound = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double tail = 0.0;
      for (int k = 0; k < K; ++k) tail += std::exp(-lv.t * std::ldexp(omega, k)) * proj[static_cast<std::size_t>(k)][i];
      const double rhs = kdiag[i] + tail;
      scale = std::max(scale, rhs);
      lv.min_slack = std::min(lv.min_slack, rhs - p[i]);
      lv.implied_lower_bound = std::min(lv.implied_lower_bound, p[i] - tail);
    }
    rep.levels.push_back(lv);
  }
  rep.tolerance = 1e-10 * scale;
  for (const auto& lv : rep.levels) slack_ok = slack_ok && lv.min_slack >= -rep.tolerance;
  rep.ok = slack_ok && rep.min_kernel_diagonal > 0.0;
  return rep;
}

double orthonormality_defect(const SpectralData& s) {
  const Eigen::MatrixXd gram = s.grid().cell_volume() * (s.modes().transpose() * s.modes());
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double eigen_residual(const DiscreteOperator& h, const SpectralData& s) {
  const std::size_t n = s.size();
  const double norm = std::max(std::abs(s.eigenvalues().front()), std::abs(s.eigenvalues().back()));
  double worst = 0.0;
  std::vector<double> hv(n);
  for (std::size_t m = 0; m < n; ++m) {
    const auto col = s.modes().col(static_cast<Eigen::Index>(m));
    h.matrix().apply({col.data(), n}, hv);
    for (std::size_t i = 0; i < n; ++i) hv[i] -= s.eigenvalues()[m] * col(static_cast<Eigen::Index>(i));
    worst = std::max(worst, weighted_norm(s.grid(), hv) / norm);
  }
  return worst;
}

}  // namespace specband
