// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <random>

#include "eigdecoh/basis.hpp"
#include "eigdecoh/dynamics.hpp"
#include "eigdecoh/kernels/kernels.hpp"
#include "eigdecoh/operators.hpp"
#include "eigdecoh/oracle.hpp"
#include "eigdecoh/reduced.hpp"
#include "eigdecoh/witness.hpp"

namespace eigdecoh::oracle {
namespace {

// Irregular N=6 graph with a non-contiguous, unsorted subsystem list.
SpinGraph irregular6() {
  SpinGraph g;
  g.n_sites = 6;
  g.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 3}, {2, 5}};
  g.subsystem = {4, 1, 3};
  validate(g);
  return g;
}

CVector random_state(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> nd;
  CVector v(dim);
  for (auto& x : v) x = Complex(nd(rng), nd(rng));
  return v / v.norm();
}

SelftestCheck make(std::string name, double err, double tol) {
  return {std::move(name), err <= tol, err, tol};
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

SelftestCheck check_hamiltonian() {
  const SpinGraph g = builtin_graph("chain", 6);
  return make("dense H matches sector blocks (N=6 chain)",
              max_abs(dense_hamiltonian(g) - assemble_full(heisenberg_blocks(g), 6)), 1e-12);
}

SelftestCheck check_spectrum_n6() {
  const SpinGraph g = builtin_graph("chain", 6);
  const EigenSystem es = diagonalize(g, 1e-8);
  const auto ref = dense_spectrum(dense_hamiltonian(g));
  double err = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) err = std::max(err, std::abs(ref[i] - es.energy(i)));
  return make("spectrum matches dense solver (N=6 chain)", err, 1e-9);
}

SelftestCheck check_spectrum_n2() {
  const EigenSystem es = diagonalize(builtin_graph("chain", 2), 1e-8);
  const double expect[] = {-1.5, 0.5, 0.5, 0.5};
  double err = 0.0;
  for (std::size_t i = 0; i < 4; ++i) err = std::max(err, std::abs(es.energy(i) - expect[i]));
  return make("N=2 singlet/triplet spectrum", err, 1e-12);
}

SelftestCheck check_residuals() {
  const SpinGraph g = irregular6();
  const EigenSystem es = diagonalize(g, 1e-8);
  const CMatrix h = dense_hamiltonian(g);
  double err = 0.0;
  for (std::size_t n = 0; n < es.size(); ++n) {
    const CVector phi = eigenstate_full(es, n);
    err = std::max(err, (h * phi - es.energy(n) * phi).norm());
  }
  return make("eigenpair residuals against dense H", err, 1e-9);
}

SelftestCheck check_operator_apply() {
  const SpinGraph g = irregular6();
  std::mt19937_64 rng(11);
  PauliStringSum custom;
  custom.terms.push_back({Complex(0.3, -0.2), {{0, PauliLetter::Y}, {5, PauliLetter::Plus}}});
  custom.terms.push_back({Complex(-1.1, 0.0), {{2, PauliLetter::X}, {3, PauliLetter::Z}, {4, PauliLetter::Minus}}});
  double err = 0.0;
  for (const PauliStringSum& op : {build_witness_W(g.subsystem), build_classical_C(g.subsystem), custom}) {
    const CVector v = random_state(rng, 64);
    err = std::max(err, (apply(op, std::span<const Complex>(v.data(), 64), 6) - dense_operator(op, 6) * v)
                            .cwiseAbs()
                            .maxCoeff());
  }
  return make("operator application matches dense matrices", err, 1e-12);
}

SelftestCheck check_partial_trace() {
  const SpinGraph g = irregular6();
  std::mt19937_64 rng(23);
  double err = 0.0;
  for (int k = 0; k < 20; ++k) {
    const CVector u = random_state(rng, 64);
    const CVector v = random_state(rng, 64);
    err = std::max(err, max_abs(transition_rdm(u, v, g) - dense_partial_trace(u * v.adjoint(), g)));
  }
  return make("transition RDM matches dense partial trace", err, 1e-12);
}

SelftestCheck check_pair_witness() {
  const SpinGraph g = irregular6();
  const EigenSystem es = diagonalize(g, 1e-8);
  const PauliStringSum w = build_witness_W(g.subsystem);
  const CMatrix dense = dense_operator(w, 6);
  double err = 0.0;
  for (std::size_t n = 0; n < es.size(); n += 3) {
    for (std::size_t m = 1; m < es.size(); m += 5) {
      if (m == n) continue;
      const CVector pm = eigenstate_full(es, m);
      const CVector pn = eigenstate_full(es, n);
      const PairWitness pw = pair_witness(m, n, w, es);
      err = std::max(err, std::abs(pw.w - dense_pair_witness(dense, pm, pn)));
      err = std::max(err, std::abs(pw.w_abs - std::abs(pm.dot(dense * pn))));
    }
  }
  return make("pair witness matches dense sandwich", err, 1e-10);
}

SelftestCheck check_scan() {
  const SpinGraph g = irregular6();
  const EigenSystem es = diagonalize(g, 1e-8);
  const PauliStringSum w = build_witness_W(g.subsystem);
  CMatrix phi(64, static_cast<Eigen::Index>(es.size()));
  for (std::size_t n = 0; n < es.size(); ++n) phi.col(static_cast<Eigen::Index>(n)) = eigenstate_full(es, n);
  const CMatrix elements = phi.adjoint() * dense_operator(w, 6) * phi;
  const ScanResult scan = witness_scan(es, w, std::numeric_limits<double>::infinity(), "W");
  CMatrix seen = CMatrix::Zero(elements.rows(), elements.cols());
  double err = 0.0;
  for (const auto& r : scan.records) {
    const auto m = static_cast<Eigen::Index>(r.m);
    const auto n = static_cast<Eigen::Index>(r.n);
    err = std::max(err, std::abs(r.w_abs - std::abs(elements(m, n))));
    seen(m, n) = seen(n, m) = 1.0;
  }
  // Pairs the scan skipped must vanish in the dense matrix as well.
  for (Eigen::Index m = 0; m < elements.rows(); ++m) {
    for (Eigen::Index n = 0; n < elements.cols(); ++n) {
      if (m != n && seen(m, n) == 0.0) err = std::max(err, std::abs(elements(m, n)));
    }
  }
  return make("witness scan matches dense eigenbasis matrix", err, 1e-10);
}

SelftestCheck check_double_sum() {
  const SpinGraph g = irregular6();
  const EigenSystem es = diagonalize(g, 1e-8);
  const auto rdms = all_transition_rdms(es, g);
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> time(0.0, 50.0);
  const OverlapCoefficients c = overlaps(random_state(rng, 64), es);
  double err = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double t = time(rng);
    err = std::max(err, max_abs(evolve_rdm(c, t, es, g) - rdm_double_sum(c, t, es, rdms)));
  }
  return make("evolved RDM matches eigenpair double sum", err, 1e-9);
}

SelftestCheck check_kernels() {
  const kernels::KernelTable* simd = kernels::avx2_table();
  if (simd == nullptr) return {"SIMD kernels match scalar (no SIMD variant on this CPU)", true, 0.0, 0.0};
  const kernels::KernelTable& ref = kernels::scalar_table();
  std::mt19937_64 rng(41);
  double err = 0.0;
  for (std::size_t len : {0u, 1u, 2u, 3u, 7u, 16u, 33u, 1000u}) {
    const CVector a = random_state(rng, static_cast<Eigen::Index>(std::max<std::size_t>(len, 1)));
    const CVector b = random_state(rng, a.size());
    err = std::max(err, std::abs(ref.cdot(a.data(), b.data(), len) - simd->cdot(a.data(), b.data(), len)));
    err = std::max(err, std::abs(ref.norm2(a.data(), len) - simd->norm2(a.data(), len)));
    CVector y1 = b;
    CVector y2 = b;
    ref.caxpy(Complex(0.7, -1.3), a.data(), y1.data(), len);
    simd->caxpy(Complex(0.7, -1.3), a.data(), y2.data(), len);
    err = std::max(err, max_abs(y1 - y2));
    ref.conj_inplace(y1.data(), len);
    simd->conj_inplace(y2.data(), len);
    err = std::max(err, max_abs(y1 - y2));
  }
  return make(std::string("SIMD kernels match scalar (") + std::string(simd->name) + ")", err, 1e-13);
}

}  // namespace

std::vector<SelftestCheck> run_selftest() {
  return {check_hamiltonian(), check_spectrum_n6(), check_spectrum_n2(), check_residuals(), check_operator_apply(),
          check_partial_trace(), check_pair_witness(), check_scan(), check_double_sum(), check_kernels()};
}

}  // namespace eigdecoh::oracle
