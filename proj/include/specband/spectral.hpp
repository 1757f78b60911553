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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specband/grid.hpp"
#include "specband/op.hpp"

namespace specband {

struct SpectralOptions {
  std::size_t max_size = 4096;
  /// Warn when min_m |lambda_m - Omega| < margin_rel * Omega.
  double margin_rel = 1e-6;
};

/// Full eigendecomposition of a DiscreteOperator with eigenvectors
/// orthonormal in <f, g> = h^d sum f_i g_i, plus the Omega band.
class SpectralData {
 public:
  SpectralData(GridSpec grid, std::vector<double> eigenvalues, Eigen::MatrixXd modes, double omega,
               std::vector<std::string> warnings);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return eigenvalues_.size(); }
  std::span<const double> eigenvalues() const { return eigenvalues_; }
  /// Column m is the eigenvector phi_m sampled at the nodes.
  const Eigen::MatrixXd& modes() const { return modes_; }
  double omega() const { return omega_; }
  /// Band = the first band_size() modes (lambda_m <= Omega).
  std::size_t band_size() const { return band_size_; }
  double spectral_margin() const { return margin_; }
  double max_eigenvalue() const { return eigenvalues_.back(); }
  const std::vector<std::string>& warnings() const { return warnings_; }
  auto band_modes() const { return modes_.leftCols(static_cast<Eigen::Index>(band_size_)); }

 private:
  GridSpec grid_;
  std::vector<double> eigenvalues_;
  Eigen::MatrixXd modes_;
  double omega_;
  std::size_t band_size_ = 0;
  double margin_ = 0.0;
  std::vector<std::string> warnings_;
};

SpectralData eigendecompose(const DiscreteOperator& h, double omega, const SpectralOptions& opts = {});

/// Kernel k(x_i, x_j) of an operator F(H) on the grid, dense and exactly symmetric.
struct KernelMatrix {
  GridSpec grid;
  double omega = 0.0;
  Eigen::MatrixXd values;
  std::string provenance;

  std::vector<double> diagonal() const;
  std::size_t size() const { return static_cast<std::size_t>(values.rows()); }
};

/// k(x, y) = sum_{m in band} phi_m(x) phi_m(y).
KernelMatrix reproducing_kernel(const SpectralData& s);

/// k^F(x, y) = sum_m F(lambda_m) phi_m(x) phi_m(y). Throws ValidationError if F
/// is not finite on some eigenvalue.
KernelMatrix functional_calculus(const SpectralData& s, const std::function<double(double)>& f);
/// Diagonal x -> k^F(x, x) only, O(n^2).
std::vector<double> functional_diagonal(const SpectralData& s, const std::function<double(double)>& f);

struct HeatKernel {
  KernelMatrix kernel;
  double t = 0.0;
  /// t^{d/2} min_x p_t(x,x) and t^{d/2} max_x p_t(x,x).
  double c_emp = 0.0;
  double C_emp = 0.0;
};

HeatKernel heat_kernel(const SpectralData& s, double t);

struct HeatDiagonal {
  std::vector<double> diagonal;
  double t = 0.0;
  double c_emp = 0.0;
  double C_emp = 0.0;
};
HeatDiagonal heat_diagonal(const SpectralData& s, double t);

/// Pointwise k(x,x) <= e * p_{1/Omega}(x,x).
struct CompkerReport {
  double min_slack = 0.0;  // min_x (e p_{1/Omega}(x,x) - k(x,x))
  double max_ratio = 0.0;  // max_x k(x,x) / (e p_{1/Omega}(x,x))
  bool ok = false;
};
CompkerReport compker_check(const SpectralData& s);

struct BernsteinReport {
  std::uint64_t seed = 0;
  int trials = 0;
  int k_max = 0;
  /// Per k = 1..k_max: max over trials of ||H^k f|| / (Omega^k ||f||).
  std::vector<double> max_ratio;
  double tolerance = 1e-8;
  double spectral_margin = 0.0;
  bool ok = false;
};

/// ||H^k f|| / (Omega^k ||f||) for f = sum_m c_m phi_m over the band, k = 1..k_max.
/// H is applied as the sparse operator with re-projection onto the band after
/// each step.
std::vector<double> bernstein_ratios(const DiscreteOperator& h, const SpectralData& s,
                                     std::span<const double> band_coefficients, int k_max);

BernsteinReport bernstein_check(const DiscreteOperator& h, const SpectralData& s, int trials,
                                int k_max, std::uint64_t seed);

struct DyadicReport {
  struct Level {
    int r = 0;
    double t = 0.0;
    /// min_x (RHS(x) - p_t(x,x)); >= -tol means the inequality holds.
    double min_slack = 0.0;
    /// min_x of p_t(x,x) - sum_k e^{-t 2^k Omega} chi_{[0, 2^{k+1} Omega]}(x,x), a
    /// lower bound for k(x,x).
    double implied_lower_bound = 0.0;
    int terms = 0;
  };
  std::vector<Level> levels;
  bool sufficient_range = false;
  double min_kernel_diagonal = 0.0;
  double tolerance = 0.0;
  bool ok = false;
  std::vector<std::string> warnings;
};

DyadicReport dyadic_lower_bound_check(const SpectralData& s);

/// Max |Gram - I| under the weighted inner product. O(n^3).
double orthonormality_defect(const SpectralData& s);
/// Max over pairs of ||H phi - lambda phi||_2 / ||H||.
double eigen_residual(const DiscreteOperator& h, const SpectralData& s);

}  // namespace specband
