// Copyright 2026 The PSV Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Contiguous complex-vector kernels used by the state-vector algebra.
// A scalar reference table is always present; SIMD tables are compiled in
// per architecture and picked at runtime from what the CPU reports.

#include <complex>
#include <cstddef>
#include <string_view>

namespace psv::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  const char *name;
  /// sum |x_i|^2
  double (*norm_sq)(const cplx *x, std::size_t n);
  /// sum conj(x_i) * y_i
  cplx (*dot)(const cplx *x, const cplx *y, std::size_t n);
  /// y += alpha * x
  void (*axpy)(cplx alpha, const cplx *x, cplx *y, std::size_t n);
  /// x *= alpha
  void (*scale)(cplx alpha, cplx *x, std::size_t n);
};

enum class Backend { Auto, Scalar, Avx2 };

const KernelTable &scalar_table();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks
/// AVX2/FMA.
const KernelTable *avx2_table();

/// The table all library code goes through. Initialised on first use from
/// the PSV_KERNELS environment variable ("scalar", "avx2", unset = auto).
const KernelTable &active();

/// Forces a backend; returns false (and leaves the selection unchanged) if
/// the requested backend is unavailable.
bool select(Backend backend);

Backend parse_backend(std::string_view name);

}  // namespace psv::kernels
