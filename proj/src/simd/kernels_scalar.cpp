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

#include "specband/simd/kernels.hpp"

namespace specband::simd {
namespace {

// Four independent accumulators, combined as (s0 + s1) + (s2 + s3). The AVX2
// path keeps the same lane structure, so both agree to a few ulp.

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return ((s0 + s1) + (s2 + s3)) + tail;
}

double sum_scalar(const double* a, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i];
    s1 += a[i + 1];
    s2 += a[i + 2];
    s3 += a[i + 3];
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i];
  return ((s0 + s1) + (s2 + s3)) + tail;
}

double sum_squares_scalar(const double* a, std::size_t n) { return dot_scalar(a, a, n); }

void accumulate_weighted_squares_scalar(double* out, const double* x, double w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += w * (x[i] * x[i]);
}

void axpy_scalar(double* out, const double* x, double w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += w * x[i];
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar,
                                 dot_scalar,
                                 sum_scalar,
                                 sum_squares_scalar,
                                 accumulate_weighted_squares_scalar,
                                 axpy_scalar};
  return table;
}

}  // namespace specband::simd
