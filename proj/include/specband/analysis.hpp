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

#include <span>
#include <string>
#include <vector>

#include "specband/constcoef.hpp"
#include "specband/geometry.hpp"
#include "specband/spectral.hpp"
#include "specband/symbol.hpp"

namespace specband {

/// Sampling bounds A ||f||^2 <= sum_s |f(s)|^2 <= B ||f||^2 on the band, and the
/// Riesz lower bound of the kernel Gram on S.
struct FrameReport {
  double a = 0.0;      // lower frame bound; exactly 0 when #S < band dimension
  double a_raw = 0.0;  // smallest eigenvalue of E^T E as computed
  double b_upper = 0.0;
  double riesz_min = 0.0;
  std::size_t band_dimension = 0;
  std::size_t points = 0;
  double tol_a_rel = 1e-8;   // stable sampling iff a > tol_a_rel * b_upper and #S >= band
  double tol_r_rel = 1e-6;   // interpolating iff riesz_min > tol_r_rel * max diag
  bool stable_sampling = false;
  bool interpolating = false;
  double spectral_margin = 0.0;
};

FrameReport frame_bounds(const PointSet& s, const SpectralData& spec);

struct RieszReport {
  double lambda_min = 0.0;
  double max_diagonal = 0.0;
  double tolerance_rel = 1e-6;
  bool interpolating = false;
};

/// Smallest eigenvalue of G_st = k(s, t).
RieszReport riesz_lower_bound(const PointSet& s, const KernelMatrix& k);

struct Curve {
  std::vector<double> radii;
  std::vector<double> values;
};

/// sup_x h^d sum_{|y - x| > r} |k(x, y)|^2 (closed-ball complement, torus metric).
/// Radii must not exceed L/2 - h.
Curve weak_localization_curve(const KernelMatrix& k, std::span<const double> radii);

/// sup_x sum_{s in S, |s - x| > r} |k(x, s)|^2.
Curve hap_check(const KernelMatrix& k, const PointSet& s, std::span<const double> radii);

/// True if the curve never increases.
bool nonincreasing(const Curve& c);

struct ApproxIdentityReport {
  std::vector<double> widths;  // cube side lengths
  std::vector<double> errors;  // sup_x || chi(H) phi_x - k_x ||_2
  /// log(err_{i+1}/err_i) / log(w_{i+1}/w_i) for consecutive widths.
  std::vector<double> observed_order;
  double min_order = 0.75;
  bool ok = false;
};

/// Widths are odd multiples of the grid spacing (node-centered cubes).
ApproxIdentityReport approx_identity_check(const SpectralData& spec, const KernelMatrix& k,
                                           std::span<const double> widths);

struct LimitKernelReport {
  std::vector<double> distances;
  std::vector<double> l2_differences;       // || T_{-x} k_x - k~_0 ||_2
  std::vector<double> diagonal_differences; // | k(x,x) - |Sigma|/(2 pi)^d |
  double limit_diagonal = 0.0;              // |Sigma_Omega^b| / (2 pi)^d
  double slack = 0.1;
  bool nonincreasing = false;
  bool strictly_decreasing = false;
};

/// Distances are measured from the bump center along axis 0 (toward smaller x);
/// every distance must exceed `support_radius`.
LimitKernelReport limit_kernel_convergence(const SymbolField& a, const SpectralData& spec,
                                           const KernelMatrix& k, const SymMatrix& b, Point bump_center,
                                           double support_radius, std::span<const double> distances);

}  // namespace specband
