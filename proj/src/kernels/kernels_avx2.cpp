// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0

// Compiled with -mavx2 -mfma. Only reached after a runtime CPU check.
// Keep this translation unit free of library headers with inline code, so no
// AVX2-encoded copy of a shared inline function can leak into generic paths.

#include <immintrin.h>

#include <cstddef>

namespace eigdecoh::kernels::avx2 {

// Arrays are interleaved (re, im) doubles; one __m256d holds two complexes.

void cdot(const double* a, const double* b, std::size_t n, double* out_re, double* out_im) {
  __m256d acc_rr = _mm256_setzero_pd();  // (ar*br, ai*bi) lanes
  __m256d acc_ri = _mm256_setzero_pd();  // (ar*bi, ai*br) lanes
  __m256d acc_rr2 = _mm256_setzero_pd();
  __m256d acc_ri2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + 2 * i);
    const __m256d vb = _mm256_loadu_pd(b + 2 * i);
    const __m256d va2 = _mm256_loadu_pd(a + 2 * i + 4);
    const __m256d vb2 = _mm256_loadu_pd(b + 2 * i + 4);
    acc_rr = _mm256_fmadd_pd(va, vb, acc_rr);
    acc_ri = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc_ri);
    acc_rr2 = _mm256_fmadd_pd(va2, vb2, acc_rr2);
    acc_ri2 = _mm256_fmadd_pd(va2, _mm256_permute_pd(vb2, 0b0101), acc_ri2);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(a + 2 * i);
    const __m256d vb = _mm256_loadu_pd(b + 2 * i);
    acc_rr = _mm256_fmadd_pd(va, vb, acc_rr);
    acc_ri = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc_ri);
  }
  acc_rr = _mm256_add_pd(acc_rr, acc_rr2);
  acc_ri = _mm256_add_pd(acc_ri, acc_ri2);

  alignas(32) double rr[4];
  alignas(32) double ri[4];
  _mm256_store_pd(rr, acc_rr);
  _mm256_store_pd(ri, acc_ri);
  // re = sum(ar*br + ai*bi); im = sum(ar*bi - ai*br)
  double re = (rr[0] + rr[1]) + (rr[2] + rr[3]);
  double im = (ri[0] - ri[1]) + (ri[2] - ri[3]);
  for (; i < n; ++i) {
    const double ar = a[2 * i], ai = a[2 * i + 1];
    const double br = b[2 * i], bi = b[2 * i + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  *out_re = re;
  *out_im = im;
}

void caxpy(double p, double q, const double* x, double* y, std::size_t n) {
  const __m256d vp = _mm256_set1_pd(p);
  const __m256d vq = _mm256_set1_pd(q);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(x + 2 * i);
    const __m256d vxs = _mm256_permute_pd(vx, 0b0101);  // (xi, xr)
    // even lanes: p*xr - q*xi, odd lanes: p*xi + q*xr
    const __m256d t = _mm256_fmaddsub_pd(vp, vx, _mm256_mul_pd(vq, vxs));
    _mm256_storeu_pd(y + 2 * i, _mm256_add_pd(_mm256_loadu_pd(y + 2 * i), t));
  }
  for (; i < n; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    y[2 * i] += p * xr - q * xi;
    y[2 * i + 1] += p * xi + q * xr;
  }
}

double norm2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + 2 * i);
    const __m256d v2 = _mm256_loadu_pd(x + 2 * i + 4);
    acc = _mm256_fmadd_pd(v, v, acc);
    acc2 = _mm256_fmadd_pd(v2, v2, acc2);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(x + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  acc = _mm256_add_pd(acc, acc2);
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total += x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1];
  return total;
}

void conj_inplace(double* y, std::size_t n) {
  const __m256d sign = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(y + 2 * i, _mm256_xor_pd(_mm256_loadu_pd(y + 2 * i), sign));
  }
  for (; i < n; ++i) y[2 * i + 1] = -y[2 * i + 1];
}

}  // namespace eigdecoh::kernels::avx2
