// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "eigdecoh/oracle.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "eigdecoh/basis.hpp"

namespace eigdecoh::oracle {
namespace {

using Mat2 = Eigen::Matrix2cd;

// Single-site matrices in the (down = 0, up = 1) index basis.
Mat2 site_matrix(PauliLetter l) {
  const Complex i(0.0, 1.0);
  Mat2 m = Mat2::Zero();
  switch (l) {
    case PauliLetter::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case PauliLetter::Y: m(0, 1) = i; m(1, 0) = -i; break;
    case PauliLetter::Z: m << -1.0, 0.0, 0.0, 1.0; break;
    case PauliLetter::Plus: m(1, 0) = 1.0; break;
    case PauliLetter::Minus: m(0, 1) = 1.0; break;
  }
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void guard(int n_sites, int limit) {
  if (n_sites > limit) throw std::invalid_argument(fmt::format("oracle limited to {} sites", limit));
}

// Site N-1 is the most significant bit, so it is the leftmost factor.
CMatrix string_matrix(const std::vector<PauliFactor>& factors, int n_sites) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (int site = n_sites - 1; site >= 0; --site) {
    CMatrix local = Mat2::Identity();
    for (const auto& f : factors) {
      if (f.site == site) local = site_matrix(f.letter);
    }
    out = kron(out, local);
  }
  return out;
}

}  // namespace

CMatrix dense_operator(const PauliStringSum& op, int n_sites) {
  guard(n_sites, kMaxDenseSites);
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const auto& t : op.terms) out += t.coeff * string_matrix(t.factors, n_sites);
  return out;
}

CMatrix dense_hamiltonian(const SpinGraph& g) {
  guard(g.n_sites, kMaxDenseSites);
  const Eigen::Index dim = Eigen::Index{1} << g.n_sites;
  CMatrix h = CMatrix::Zero(dim, dim);
  for (auto [i, j] : g.edges) {
    for (PauliLetter l : {PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
      h += 0.5 * string_matrix({{i, l}, {j, l}}, g.n_sites);
    }
  }
  return h;
}

CMatrix assemble_full(const std::vector<SectorBlockOperator>& blocks, int n_sites) {
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const auto& b : blocks) {
    const SectorBasis src(n_sites, b.source_n_up);
    const SectorBasis dst(n_sites, b.target_n_up);
    for (const auto& e : b.entries) {
      out(static_cast<Eigen::Index>(dst[e.row]), static_cast<Eigen::Index>(src[e.col])) += e.value;
    }
  }
  return out;
}

std::vector<double> dense_spectrum(const CMatrix& h) {
  const Eigen::ComplexEigenSolver<CMatrix> solver(h, false);
  std::vector<double> ev(static_cast<std::size_t>(h.rows()));
  for (Eigen::Index i = 0; i < h.rows(); ++i) ev[static_cast<std::size_t>(i)] = solver.eigenvalues()[i].real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

CMatrix dense_partial_trace(const CMatrix& rho_full, const SpinGraph& g) {
  guard(g.n_sites, kMaxDenseSites);
  const Eigen::Index sdim = Eigen::Index{1} << g.subsystem_size();
  CMatrix out = CMatrix::Zero(sdim, sdim);
  for (Eigen::Index i = 0; i < rho_full.rows(); ++i) {
    const auto [si, bi] = split_config(static_cast<Config>(i), g);
    for (Eigen::Index j = 0; j < rho_full.cols(); ++j) {
      const auto [sj, bj] = split_config(static_cast<Config>(j), g);
      if (bi == bj) out(static_cast<Eigen::Index>(si), static_cast<Eigen::Index>(sj)) += rho_full(i, j);
    }
  }
  return out;
}

std::vector<CMatrix> all_transition_rdms(const EigenSystem& es, const SpinGraph& g) {
  guard(g.n_sites, kMaxDoubleSumSites);
  const std::size_t d = es.size();
  std::vector<CVector> phi(d);
  for (std::size_t n = 0; n < d; ++n) phi[n] = eigenstate_full(es, n);
  std::vector<CMatrix> rdms(d * d);
  for (std::size_t n = 0; n < d; ++n) {
    for (std::size_t m = 0; m < d; ++m) rdms[n * d + m] = dense_partial_trace(phi[n] * phi[m].adjoint(), g);
  }
  return rdms;
}

CMatrix rdm_double_sum(const OverlapCoefficients& c, double t, const EigenSystem& es,
                       const std::vector<CMatrix>& rdms) {
  const std::size_t d = es.size();
  if (rdms.size() != d * d) throw std::invalid_argument("expected D^2 transition matrices");
  CMatrix out = CMatrix::Zero(rdms.front().rows(), rdms.front().cols());
  for (std::size_t n = 0; n < d; ++n) {
    for (std::size_t m = 0; m < d; ++m) {
      const Complex coeff = c.c[static_cast<Eigen::Index>(n)] * std::conj(c.c[static_cast<Eigen::Index>(m)]) *
                            std::exp(Complex(0.0, -(es.energy(n) - es.energy(m)) * t));
      out += coeff * rdms[n * d + m];
    }
  }
  return out;
}

double dense_pair_witness(const CMatrix& a_full, const CVector& phi_m, const CVector& phi_n) {
  const CVector s = phi_m + phi_n;
  return 0.5 * s.dot(a_full * s).real();
}

}  // namespace eigdecoh::oracle
