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

#include "psv/kernels.hpp"

namespace psv::kernels {

namespace {

double norm_sq_scalar(const cplx *x, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::norm(x[i]);
  return sum;
}

cplx dot_scalar(const cplx *x, const cplx *y, std::size_t n) {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::conj(x[i]) * y[i];
  return sum;
}

void axpy_scalar(cplx alpha, const cplx *x, cplx *y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(cplx alpha, cplx *x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

constexpr KernelTable kScalar{"scalar", norm_sq_scalar, dot_scalar,
                              axpy_scalar, scale_scalar};

}  // namespace

const KernelTable &scalar_table() { return kScalar; }

}  // namespace psv::kernels
