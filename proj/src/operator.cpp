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

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>

#include "specband/error.hpp"
#include "specband/op.hpp"

namespace specband {

void CsrMatrix::apply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

std::vector<double> CsrMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(rows);
  apply(x, y);
  return y;
}

double CsrMatrix::at(std::size_t r, std::size_t c) const {
  const auto first = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[r]);
  const auto last = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[r + 1]);
  const auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return 0.0;
  return vals[static_cast<std::size_t>(it - cols.begin())];
}

double CsrMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      worst = std::max(worst, std::abs(vals[k] - at(cols[k], r)));
    }
  }
  return worst;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : vals) m = std::max(m, std::abs(v));
  return m;
}

Eigen::MatrixXd CsrMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols[k])) = vals[k];
    }
  }
  return d;
}

DiscreteOperator::DiscreteOperator(std::shared_ptr<const SymbolField> symbol, CsrMatrix matrix)
    : symbol_(std::move(symbol)), matrix_(std::move(matrix)) {}

namespace {

using Entry = std::pair<std::size_t, double>;

// Merges duplicate columns in stencil order, then sorts by column.
void push_row(CsrMatrix& m, std::vector<Entry>& row) {
  std::vector<Entry> merged;
  merged.reserve(row.size());
  for (const auto& e : row) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Entry& x) { return x.first == e.first; });
    if (it == merged.end()) {
      merged.push_back(e);
    } else {
      it->second += e.second;
    }
  }
  std::sort(merged.begin(), merged.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (const auto& e : merged) {
    m.cols.push_back(e.first);
    m.vals.push_back(e.second);
  }
  m.row_ptr.push_back(m.cols.size());
  row.clear();
}

double midpoint(double lo, double hi) { return 0.5 * (lo + hi); }

CsrMatrix assemble_1d(const SymbolField& a) {
  const auto& g = a.grid();
  const std::size_t n = g.size();
  const double h = g.spacing(0);
  const double inv_h2 = 1.0 / (h * h);
  CsrMatrix m;
  m.rows = n;
  m.row_ptr.reserve(n + 1);
  m.row_ptr.push_back(0);
  std::vector<Entry> row;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip = g.shifted(i, {1, 0});
    const std::size_t im = g.shifted(i, {-1, 0});
    const double a_plus = midpoint(a.at(i).xx, a.at(ip).xx);
    const double a_minus = midpoint(a.at(im).xx, a.at(i).xx);
    row.emplace_back(i, (a_plus + a_minus) * inv_h2);
    row.emplace_back(ip, -a_plus * inv_h2);
    row.emplace_back(im, -a_minus * inv_h2);
    push_row(m, row);
  }
  return m;
}

CsrMatrix assemble_2d(const SymbolField& a) {
  const auto& g = a.grid();
  const std::size_t n = g.size();
  const double hx = g.spacing(0);
  const double hy = g.spacing(1);
  const double inv_hx2 = 1.0 / (hx * hx);
  const double inv_hy2 = 1.0 / (hy * hy);
  const double c = 1.0 / (4.0 * hx * hy);
  const bool mixed = std::any_of(a.values().begin(), a.values().end(),
                                 [](const SymMatrix& s) { return s.xy != 0.0; });

  CsrMatrix m;
  m.rows = n;
  m.row_ptr.reserve(n + 1);
  m.row_ptr.push_back(0);
  std::vector<Entry> row;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t e = g.shifted(p, {1, 0});
    const std::size_t w = g.shifted(p, {-1, 0});
    const std::size_t nn = g.shifted(p, {0, 1});
    const std::size_t s = g.shifted(p, {0, -1});
    const double ax_plus = midpoint(a.at(p).xx, a.at(e).xx);
    const double ax_minus = midpoint(a.at(w).xx, a.at(p).xx);
    const double ay_plus = midpoint(a.at(p).yy, a.at(nn).yy);
    const double ay_minus = midpoint(a.at(s).yy, a.at(p).yy);

    row.emplace_back(p, (ax_plus + ax_minus) * inv_hx2 + (ay_plus + ay_minus) * inv_hy2);
    row.emplace_back(e, -ax_plus * inv_hx2);
    row.emplace_back(w, -ax_minus * inv_hx2);
    row.emplace_back(nn, -ay_plus * inv_hy2);
    row.emplace_back(s, -ay_minus * inv_hy2);
    if (mixed) {
      // -D_x(a_xy D_y f) - D_y(a_xy D_x f), centered differences.
      const double bx_e = a.at(e).xy, bx_w = a.at(w).xy;
      const double by_n = a.at(nn).xy, by_s = a.at(s).xy;
      row.emplace_back(g.shifted(p, {1, 1}), -(bx_e + by_n) * c);
      row.emplace_back(g.shifted(p, {-1, -1}), -(bx_w + by_s) * c);
      row.emplace_back(g.shifted(p, {1, -1}), (bx_e + by_s) * c);
      row.emplace_back(g.shifted(p, {-1, 1}), (bx_w + by_n) * c);
    }
    push_row(m, row);
  }
  return m;
}

}  // namespace

DiscreteOperator discretize(const SymbolField& a) {
  CsrMatrix m = a.grid().dim() == 1 ? assemble_1d(a) : assemble_2d(a);
  const double asym = m.max_asymmetry();
  if (asym > 1e-12 * m.max_abs()) {
    std::ostringstream os;
    os << "flux stencil is not symmetric: max |H - H^T| = " << asym;
    throw CheckFailure(os.str());
  }
  return DiscreteOperator(std::make_shared<const SymbolField>(a), std::move(m));
}

CsrMatrix permute_conjugate(const GridSpec& grid, const CsrMatrix& h, NodeOffset shift) {
  const NodeOffset back{-shift[0], -shift[1]};
  CsrMatrix out;
  out.rows = h.rows;
  out.row_ptr.reserve(h.rows + 1);
  out.row_ptr.push_back(0);
  std::vector<Entry> row;
  for (std::size_t i = 0; i < h.rows; ++i) {
    const std::size_t src = grid.shifted(i, shift);
    for (std::size_t k = h.row_ptr[src]; k < h.row_ptr[src + 1]; ++k) {
      row.emplace_back(grid.shifted(h.cols[k], back), h.vals[k]);
    }
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (const auto& e : row) {
      out.cols.push_back(e.first);
      out.vals.push_back(e.second);
    }
    out.row_ptr.push_back(out.cols.size());
    row.clear();
  }
  return out;
}

DiscreteOperator conjugated_operator(const SymbolField& a, NodeOffset shift) {
  DiscreteOperator translated = discretize(translate_symbol(a, shift));
  const DiscreteOperator base = discretize(a);
  const CsrMatrix conjugated = permute_conjugate(a.grid(), base.matrix(), shift);
  if (!(conjugated == translated.matrix())) {
    throw CheckFailure("conjugation identity violated: discretize(T_{-x} a) != P_{-x} H P_x");
  }
  return translated;
}

void write_coordinate(std::ostream& os, const CsrMatrix& m) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) {
      buf << r << ' ' << m.cols[k] << ' ' << m.vals[k] << '\n';
    }
  }
  os << buf.str();
}

}  // namespace specband
