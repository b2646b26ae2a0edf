// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Complex-double inner loops shared by the partial trace, the witness scan
// and eigenbasis time evolution. Each kernel has a scalar reference
// implementation; SIMD variants are chosen once at startup from the CPU
// feature set and must agree with the scalar path to rounding.

#include <cstddef>
#include <span>
#include <string_view>

#include "eigdecoh/types.hpp"

namespace eigdecoh::kernels {

struct KernelTable {
  std::string_view name;
  /// sum_i conj(a[i]) * b[i]
  Complex (*cdot)(const Complex* a, const Complex* b, std::size_t n);
  /// y[i] += alpha * x[i]
  void (*caxpy)(Complex alpha, const Complex* x, Complex* y, std::size_t n);
  /// sum_i |x[i]|^2
  double (*norm2)(const Complex* x, std::size_t n);
  /// y[i] = conj(y[i]) for all i
  void (*conj_inplace)(Complex* y, std::size_t n);
};

const KernelTable& scalar_table();

/// AVX2+FMA table, or nullptr when not compiled in or not supported by the CPU.
const KernelTable* avx2_table();

/// Table used by the library. Chosen on first call: the best supported variant,
/// unless the environment variable EIGDECOH_KERNELS=scalar forces the reference.
const KernelTable& active();

inline Complex cdot(std::span<const Complex> a, std::span<const Complex> b) {
  return active().cdot(a.data(), b.data(), a.size());
}

inline void caxpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  active().caxpy(alpha, x.data(), y.data(), x.size());
}

inline double norm2(std::span<const Complex> x) { return active().norm2(x.data(), x.size()); }

}  // namespace eigdecoh::kernels
