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

// Inner-loop arithmetic kernels. Every kernel has a scalar reference version
// and, on x86-64, an AVX2+FMA version; the active table is chosen once at
// startup from CPUID. SPECBAND_SIMD=scalar in the environment forces the
// reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace specband::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  double (*sum_squares)(const double* a, std::size_t n);
  /// out[i] += w * x[i] * x[i]
  void (*accumulate_weighted_squares)(double* out, const double* x, double w, std::size_t n);
  /// out[i] += w * x[i]
  void (*axpy)(double* out, const double* x, double w, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();
/// The table selected for this process.
const KernelTable& active();
std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double sum(std::span<const double> a) { return active().sum(a.data(), a.size()); }
inline double sum_squares(std::span<const double> a) {
  return active().sum_squares(a.data(), a.size());
}
inline void accumulate_weighted_squares(std::span<double> out, std::span<const double> x, double w) {
  active().accumulate_weighted_squares(out.data(), x.data(), w, out.size());
}
inline void axpy(std::span<double> out, std::span<const double> x, double w) {
  active().axpy(out.data(), x.data(), w, out.size());
}

}  // namespace specband::simd
