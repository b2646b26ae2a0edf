// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>

#include "eigdecoh/kernels/kernels.hpp"
#include "support.hpp"

using namespace eigdecoh;
using eigdecoh::testing::random_state;

namespace {

std::vector<const kernels::KernelTable*> tables() {
  std::vector<const kernels::KernelTable*> t{&kernels::scalar_table()};
  if (const auto* simd = kernels::avx2_table()) t.push_back(simd);
  return t;
}

}  // namespace

TEST_CASE("scalar reference kernels") {
  const auto& k = kernels::scalar_table();
  const Complex a[] = {{1, 2}, {3, -1}};
  const Complex b[] = {{0, 1}, {2, 2}};
  // conj(1+2i)(i) + conj(3-i)(2+2i) = (2+i) + (4+8i)
  CHECK(k.cdot(a, b, 2) == Complex(6, 9));
  CHECK(k.norm2(a, 2) == 15.0);
  Complex y[] = {{1, 1}, {0, 0}};
  k.caxpy(Complex(0, 1), a, y, 2);
  CHECK(y[0] == Complex(-1, 2));
  CHECK(y[1] == Complex(1, 3));
  k.conj_inplace(y, 2);
  CHECK(y[0] == Complex(-1, -2));
  CHECK(k.cdot(a, b, 0) == Complex(0));
}

TEST_CASE("every variant matches the scalar reference") {
  std::mt19937_64 rng(99);
  const auto& ref = kernels::scalar_table();
  for (const auto* k : tables()) {
    CAPTURE(k->name);
    for (std::size_t n = 0; n < 70; ++n) {
      const CVector a = random_state(rng, static_cast<Eigen::Index>(n + 1));
      const CVector b = random_state(rng, static_cast<Eigen::Index>(n + 1));
      CHECK(std::abs(k->cdot(a.data(), b.data(), n) - ref.cdot(a.data(), b.data(), n)) < 1e-14);
      CHECK(std::abs(k->norm2(a.data(), n) - ref.norm2(a.data(), n)) < 1e-14);
      CVector y1 = b, y2 = b;
      k->caxpy(Complex(-0.25, 2.0), a.data(), y1.data(), n);
      ref.caxpy(Complex(-0.25, 2.0), a.data(), y2.data(), n);
      CHECK((y1 - y2).cwiseAbs().maxCoeff() < 1e-14);
      // Untouched tail.
      CHECK(y1[static_cast<Eigen::Index>(n)] == b[static_cast<Eigen::Index>(n)]);
      k->conj_inplace(y1.data(), n);
      ref.conj_inplace(y2.data(), n);
      CHECK((y1 - y2).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("active table") {
  const auto& active = kernels::active();
  if (const char* env = std::getenv("EIGDECOH_KERNELS"); env != nullptr && std::string_view(env) == "scalar") {
    CHECK(active.name == kernels::scalar_table().name);
  } else if (kernels::avx2_table() != nullptr) {
    CHECK(active.name == kernels::avx2_table()->name);
  }
  const CVector a = CVector::Ones(5);
  CHECK(kernels::cdot({a.data(), 5}, {a.data(), 5}) == Complex(5.0));
  CHECK(kernels::norm2({a.data(), 5}) == 5.0);
}
