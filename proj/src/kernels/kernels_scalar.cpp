// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "eigdecoh/kernels/kernels.hpp"

namespace eigdecoh::kernels {
namespace {

Complex cdot_scalar(const Complex* a, const Complex* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void caxpy_scalar(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const double p = alpha.real(), q = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = Complex(y[i].real() + (p * xr - q * xi), y[i].imag() + (p * xi + q * xr));
  }
}

double norm2_scalar(const Complex* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void conj_scalar(Complex* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::conj(y[i]);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &cdot_scalar, &caxpy_scalar, &norm2_scalar, &conj_scalar};
  return table;
}

}  // namespace eigdecoh::kernels
