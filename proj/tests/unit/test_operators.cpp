// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "eigdecoh/basis.hpp"
#include "eigdecoh/operators.hpp"
#include "eigdecoh/oracle.hpp"
#include "support.hpp"

using namespace eigdecoh;
using eigdecoh::testing::make_graph;
using eigdecoh::testing::max_abs;
using eigdecoh::testing::random_state;

namespace {

CVector basis_vector(int n_sites, Config c) {
  CVector v = CVector::Zero(Eigen::Index{1} << n_sites);
  v[static_cast<Eigen::Index>(c)] = 1.0;
  return v;
}

CVector full_apply(const PauliStringSum& op, const CVector& v, int n) {
  return apply(op, std::span<const Complex>(v.data(), static_cast<std::size_t>(v.size())), n);
}

}  // namespace

TEST_CASE("two-site Heisenberg action on |up down>") {
  const SpinGraph g = builtin_graph("chain", 2);
  const auto blocks = heisenberg_blocks(g);
  REQUIRE(blocks.size() == 3);
  // Site 0 up, site 1 down is c = 0b01, position 0 in the n_up = 1 sector.
  const SectorBasis b(2, 1);
  REQUIRE(b[0] == 0b01);
  const CMatrix h1 = blocks[1].to_dense();
  CHECK(h1(0, 0) == Complex(-0.5));
  CHECK(h1(1, 0) == Complex(1.0));
  CHECK(blocks[0].to_dense()(0, 0) == Complex(0.5));
  CHECK(blocks[2].to_dense()(0, 0) == Complex(0.5));
  // Symbolic form gives the same.
  const CVector out = full_apply(heisenberg_pauli_sum(g), basis_vector(2, 0b01), 2);
  CHECK(std::abs(out[0b01] - Complex(-0.5)) < 1e-15);
  CHECK(std::abs(out[0b10] - Complex(1.0)) < 1e-15);
}

TEST_CASE("three-site chain ground energy against a dense solve") {
  const SpinGraph g = builtin_graph("chain", 3);
  const CMatrix dense = oracle::assemble_full(heisenberg_blocks(g), 3);
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(dense);
  const auto ref = oracle::dense_spectrum(oracle::dense_hamiltonian(g));
  CHECK(std::abs(es.eigenvalues()[0] - ref.front()) < 1e-10);
  CHECK(std::abs(ref.front() - (-2.0)) < 1e-10);
}

TEST_CASE("blocks preserve the sector, are Hermitian, and store no zeros") {
  const SpinGraph g = make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 3}, {1, 5}}, {0, 1, 2});
  const auto blocks = heisenberg_blocks(g);
  const PauliStringSum h = heisenberg_pauli_sum(g);
  for (int k = 0; k <= 6; ++k) {
    const auto& blk = blocks[static_cast<std::size_t>(k)];
    CHECK(blk.source_n_up == k);
    CHECK(blk.target_n_up == k);
    const CMatrix d = blk.to_dense();
    CHECK(d == d.adjoint());
    for (const auto& e : blk.entries) CHECK(e.value != Complex(0.0));
    // Every basis state stays in its sector under the symbolic H.
    const SectorBasis b(6, k);
    for (std::size_t p = 0; p < b.size(); ++p) {
      const CVector out = full_apply(h, basis_vector(6, b[p]), 6);
      for (Eigen::Index c = 0; c < out.size(); ++c) {
        if (out[c] != Complex(0.0)) CHECK(popcount(static_cast<Config>(c)) == k);
      }
    }
  }
}

TEST_CASE("random-vector hermiticity within a sector") {
  const SpinGraph g = builtin_graph("chain", 8);
  const auto blocks = heisenberg_blocks(g);
  std::mt19937_64 rng(3);
  const auto& blk = blocks[4];
  const CVector u = random_state(rng, static_cast<Eigen::Index>(blk.cols));
  const CVector v = random_state(rng, static_cast<Eigen::Index>(blk.cols));
  const Complex uhv = u.dot(blk.apply(std::span<const Complex>(v.data(), blk.cols)));
  const Complex vhu = v.dot(blk.apply(std::span<const Complex>(u.data(), blk.cols)));
  CHECK(std::abs(uhv - std::conj(vhu)) < 1e-12);
}

TEST_CASE("witness W raises the all-down subsystem for any bath") {
  const SpinGraph g = builtin_graph("default10", 10);
  const PauliStringSum w = build_witness_W(g.subsystem);
  CHECK(w == build_witness_W(5));
  const Bipartition bp(g);
  for (Config b = 0; b < bp.bath_dim(); b += 7) {
    const CVector out = full_apply(w, basis_vector(10, bp.join(0, b)), 10);
    const Config target = bp.join(0b11111, b);
    CHECK(out[static_cast<Eigen::Index>(target)] == Complex(1.0));
    CHECK(out.norm() == doctest::Approx(1.0));
  }
  for (Config s = 1; s < 31; ++s) {
    CHECK(full_apply(w, basis_vector(10, bp.join(s, 5)), 10).norm() == 0.0);
  }
}

TEST_CASE("classical C signs") {
  const PauliStringSum c = build_classical_C(5);
  CHECK(act(c.terms[0], 0b11111)->second == Complex(1.0));
  CHECK(act(c.terms[0], 0b11101)->second == Complex(-1.0));
  CHECK(operator_norm(c, 5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(operator_norm(Complex(2.0) * c, 5) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("single-site raising") {
  const PauliStringSum sp{{{Complex(1.0), {{0, PauliLetter::Plus}}}}};
  CHECK(full_apply(sp, basis_vector(1, 0), 1) == basis_vector(1, 1));
  CHECK(full_apply(sp, basis_vector(1, 1), 1).norm() == 0.0);
}

TEST_CASE("operator norm of W") {
  for (int m : {1, 3, 5}) CHECK(operator_norm(build_witness_W(m), m) == doctest::Approx(1.0).epsilon(1e-14));
  const PauliStringSum half{{{Complex(1.0), {{0, PauliLetter::Plus}}}}};
  CHECK_THROWS_AS(operator_norm(half, 1), std::invalid_argument);
}

TEST_CASE("W and C agree with dense matrices on N=4") {
  std::mt19937_64 rng(19);
  const SpinGraph g = builtin_graph("chain", 4);
  for (const auto& op : {build_witness_W(g.subsystem), build_classical_C(g.subsystem)}) {
    const CVector v = random_state(rng, 16);
    CHECK(max_abs(full_apply(op, v, 4) - oracle::dense_operator(op, 4) * v) < 1e-14);
  }
}

TEST_CASE("sector blocks of W obey the selection rule exactly") {
  const int n = 6;
  const std::vector<int> sites{0, 1, 2};
  const PauliStringSum w = build_witness_W(sites);
  const PauliStringSum c = build_classical_C(sites);
  for (int src = 0; src <= n; ++src) {
    for (int dst = 0; dst <= n; ++dst) {
      const SectorBasis a(n, src);
      const SectorBasis b(n, dst);
      if (std::abs(dst - src) == 3) {
        const auto blk = sector_block(w, a, b);
        CHECK(blk.rows == b.size());
        CHECK(blk.cols == a.size());
      } else {
        CHECK_THROWS_AS(sector_block(w, a, b), std::invalid_argument);
      }
      if (src != dst) CHECK_THROWS_AS(sector_block(c, a, b), std::invalid_argument);
    }
  }
  // Sector application matches the full-space path.
  std::mt19937_64 rng(2);
  const SectorBasis s1(n, 1);
  const SectorBasis s4(n, 4);
  const CVector v = random_state(rng, static_cast<Eigen::Index>(s1.size()));
  const CVector out = apply(w, std::span<const Complex>(v.data(), s1.size()), s1, s4);
  CVector full = CVector::Zero(64);
  for (std::size_t p = 0; p < s1.size(); ++p) full[static_cast<Eigen::Index>(s1[p])] = v[static_cast<Eigen::Index>(p)];
  const CVector ref = full_apply(w, full, n);
  for (std::size_t p = 0; p < s4.size(); ++p) {
    CHECK(std::abs(out[static_cast<Eigen::Index>(p)] - ref[static_cast<Eigen::Index>(s4[p])]) < 1e-15);
  }
}

TEST_CASE("subsystem matrix of W is the two-corner matrix") {
  const SpinGraph g = builtin_graph("chain", 6);
  const CMatrix w = subsystem_matrix(build_witness_W(g.subsystem), g);
  REQUIRE(w.rows() == 8);
  CMatrix expect = CMatrix::Zero(8, 8);
  expect(7, 0) = expect(0, 7) = 1.0;
  CHECK(w == expect);
}

TEST_CASE("build_operator dispatches on kind") {
  const SpinGraph g = builtin_graph("chain", 4);
  CHECK(build_operator({"W", OperatorKind::W, {}}, g) == build_witness_W(g.subsystem));
  CHECK(build_operator({"C", OperatorKind::C, {}}, g) == build_classical_C(g.subsystem));
  PauliStringSum x{{{Complex(1.0), {{1, PauliLetter::X}}}}};
  CHECK(build_operator({"X", OperatorKind::PauliSum, x}, g) == x);
}
