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

// Closed-form constant-coefficient references: ellipsoid volumes, Paley-Wiener
// kernels on R^d and on the torus, and Sobolev-kernel Gramians.

#include <array>

#include "specband/grid.hpp"
#include "specband/symbol.hpp"

namespace specband {

class PointSet;

/// Sigma = { xi : b xi . xi <= Omega }.
struct Ellipsoid {
  int dim = 1;
  SymMatrix b = SymMatrix::scalar(1.0);
  double omega = 1.0;

  /// Throws ValidationError unless b is symmetric positive definite and Omega > 0.
  void validate() const;
};

/// |B_1| in dimension d (2 or pi).
double unit_ball_volume(int dim);

/// det(b)^{-1/2} Omega^{d/2} |B_1|.
double ellipsoid_volume(const Ellipsoid& e);

/// (2 pi)^{-d/2} (F^{-1} chi_Sigma)(u), the Paley-Wiener kernel of the constant
/// operator H_b on R^d at offset u.
double pw_kernel_exact(const Ellipsoid& e, Point offset);

/// (1/|L|) sum over xi in Sigma cap (2 pi / L) Z^d of cos(xi . u); diagonal b only.
/// Modes on the boundary (b xi . xi <= Omega (1 + 1e-12)) are included.
double periodic_pw_kernel(const Ellipsoid& e, std::array<double, 2> lengths, Point offset);
/// Number of lattice modes inside Sigma on the torus.
long periodic_mode_count(const Ellipsoid& e, std::array<double, 2> lengths);

/// <T_x kappa, T_y kappa>_{W_2^s} with kappa^ = (1 + |w|^2)^{-s}, at distance u.
/// Closed forms for (d, s) in {(1,1), (1,2), (2,3/2), (2,5/2)}; quadrature
/// otherwise. Throws ValidationError for s <= d/2.
double sobolev_kernel_gram(double s, int dim, double u);
/// Quadrature path only (no closed form shortcut).
double sobolev_kernel_gram_quadrature(double s, int dim, double u);

/// max over x in S of sum_{y in S} |G(s, d, |x - y|_torus)|.
double schur_row_bound(const PointSet& points, double s);

}  // namespace specband
