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

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "specband/grid.hpp"
#include "specband/symbol.hpp"

namespace specband {

/// Compressed sparse row matrix with sorted column indices.
struct CsrMatrix {
  std::size_t rows = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> cols;
  std::vector<double> vals;

  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;
  /// Entry lookup; zero if not stored.
  double at(std::size_t r, std::size_t c) const;
  /// max |A_ij - A_ji| over stored entries.
  double max_asymmetry() const;
  double max_abs() const;
  Eigen::MatrixXd to_dense() const;

  bool operator==(const CsrMatrix&) const = default;
};

/// Flux-form discretization of H_a = -sum_jk d_j a_jk d_k on the periodic grid.
class DiscreteOperator {
 public:
  DiscreteOperator(std::shared_ptr<const SymbolField> symbol, CsrMatrix matrix);

  const GridSpec& grid() const { return symbol_->grid(); }
  const CsrMatrix& matrix() const { return matrix_; }
  const SymbolField& symbol() const { return *symbol_; }
  std::size_t size() const { return matrix_.rows; }
  std::vector<double> apply(std::span<const double> v) const { return matrix_.apply(v); }

 private:
  std::shared_ptr<const SymbolField> symbol_;
  CsrMatrix matrix_;
};

DiscreteOperator discretize(const SymbolField& a);

/// discretize(translate_symbol(a, shift)), cross-checked bit-exactly against the
/// permutation conjugation P_{-x} H P_x of discretize(a). Throws CheckFailure on
/// mismatch.
DiscreteOperator conjugated_operator(const SymbolField& a, NodeOffset shift);

/// Permutation conjugation: (P H P^T)_{ij} = H_{pi(i) pi(j)} with pi(i) = i + shift.
CsrMatrix permute_conjugate(const GridSpec& grid, const CsrMatrix& h, NodeOffset shift);

/// Coordinate text export: "row col value" per line, 0-based, 17 significant digits.
void write_coordinate(std::ostream& os, const CsrMatrix& m);

}  // namespace specband
