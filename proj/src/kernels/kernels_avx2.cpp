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

// Built with -mavx2 -mfma; only reached through avx2_table() after the
// runtime CPU check in dispatch.cpp.

#include <immintrin.h>

#include "psv/kernels.hpp"

namespace psv::kernels::avx2 {

namespace {

// Two interleaved complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx *p) {
  return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}

inline void store2(cplx *p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}

// alpha * v for a broadcast complex alpha.
inline __m256d cmul(__m256d re, __m256d im, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(re, v, _mm256_mul_pd(im, swapped));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double norm_sq(const cplx *x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = load2(x + i);
    const __m256d b = load2(x + i + 2);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d a = load2(x + i);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += std::norm(x[i]);
  return sum;
}

cplx dot(const cplx *x, const cplx *y, std::size_t n) {
  // re lanes accumulate [xr*yr, xi*yi]; im lanes [xr*yi, xi*yr].
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = load2(x + i);
    const __m256d b = load2(y + i);
    acc_re = _mm256_fmadd_pd(a, b, acc_re);
    acc_im = _mm256_fmadd_pd(a, _mm256_permute_pd(b, 0b0101), acc_im);
  }
  alignas(32) double im[4];
  _mm256_store_pd(im, acc_im);
  cplx sum(hsum(acc_re), im[0] - im[1] + im[2] - im[3]);
  for (; i < n; ++i) sum += std::conj(x[i]) * y[i];
  return sum;
}

void axpy(cplx alpha, const cplx *x, cplx *y, std::size_t n) {
  const __m256d re = _mm256_set1_pd(alpha.real());
  const __m256d im = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    store2(y + i, _mm256_add_pd(load2(y + i), cmul(re, im, load2(x + i))));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(cplx alpha, cplx *x, std::size_t n) {
  const __m256d re = _mm256_set1_pd(alpha.real());
  const __m256d im = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(x + i, cmul(re, im, load2(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

}  // namespace

extern const KernelTable kTable;
const KernelTable kTable{"avx2", norm_sq, dot, axpy, scale};

}  // namespace psv::kernels::avx2
