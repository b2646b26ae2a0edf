// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string_view>

#include "eigdecoh/kernels/kernels.hpp"

namespace eigdecoh::kernels {

#if defined(EIGDECOH_HAVE_AVX2)
namespace avx2 {
void cdot(const double* a, const double* b, std::size_t n, double* out_re, double* out_im);
void caxpy(double p, double q, const double* x, double* y, std::size_t n);
double norm2(const double* x, std::size_t n);
void conj_inplace(double* y, std::size_t n);
}  // namespace avx2

namespace {

// std::complex<double> is layout-compatible with double[2].
const double* as_doubles(const Complex* p) { return reinterpret_cast<const double*>(p); }
double* as_doubles(Complex* p) { return reinterpret_cast<double*>(p); }

Complex cdot_avx2(const Complex* a, const Complex* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  avx2::cdot(as_doubles(a), as_doubles(b), n, &re, &im);
  return {re, im};
}
void caxpy_avx2(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  avx2::caxpy(alpha.real(), alpha.imag(), as_doubles(x), as_doubles(y), n);
}
double norm2_avx2(const Complex* x, std::size_t n) { return avx2::norm2(as_doubles(x), n); }
void conj_avx2(Complex* y, std::size_t n) { avx2::conj_inplace(as_doubles(y), n); }

bool cpu_has_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace
#endif

const KernelTable* avx2_table() {
#if defined(EIGDECOH_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  static const KernelTable table{"avx2", &cdot_avx2, &caxpy_avx2, &norm2_avx2, &conj_avx2};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [&]() -> const KernelTable& {
    const char* env = std::getenv("EIGDECOH_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace eigdecoh::kernels
