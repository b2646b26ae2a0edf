// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "eigdecoh/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "eigdecoh/kernels/kernels.hpp"
#include "eigdecoh/parallel.hpp"

namespace eigdecoh {

std::vector<Complex> gather_bipartite(std::span<const Complex> full, const Bipartition& bp) {
  const auto table = bp.join_table();
  if (full.size() != table.size()) {
    throw std::invalid_argument(fmt::format("vector length {} != 2^{}", full.size(), bp.n_sites()));
  }
  std::vector<Complex> out(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) out[i] = full[table[i]];
  return out;
}

CMatrix partial_trace_gathered(std::span<const Complex> u, std::span<const Complex> v, const Bipartition& bp) {
  const std::size_t sdim = bp.subsystem_dim();
  const std::size_t bdim = bp.bath_dim();
  CMatrix rho(static_cast<Eigen::Index>(sdim), static_cast<Eigen::Index>(sdim));
  const auto& k = kernels::active();
  for (std::size_t s = 0; s < sdim; ++s) {
    for (std::size_t sp = 0; sp < sdim; ++sp) {
      // sum_b u[s,b] conj(v[s',b]) = cdot(v_row(s'), u_row(s))
      rho(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(sp)) =
          k.cdot(v.data() + sp * bdim, u.data() + s * bdim, bdim);
    }
  }
  return rho;
}

CMatrix transition_rdm(std::span<const Complex> u, std::span<const Complex> v, const Bipartition& bp) {
  if (u.size() != v.size()) throw std::invalid_argument("transition_rdm: dimension mismatch");
  const auto gu = gather_bipartite(u, bp);
  if (u.data() == v.data()) return partial_trace_gathered(gu, gu, bp);
  const auto gv = gather_bipartite(v, bp);
  return partial_trace_gathered(gu, gv, bp);
}

CMatrix transition_rdm(const CVector& u, const CVector& v, const SpinGraph& g) {
  const Bipartition bp(g);
  return transition_rdm(std::span<const Complex>(u.data(), static_cast<std::size_t>(u.size())),
                        std::span<const Complex>(v.data(), static_cast<std::size_t>(v.size())), bp);
}

ReducedStates::ReducedStates(const EigenSystem& es, const SpinGraph& g) : es_(es), bp_(g), cache_(es.size()) {
  if (g.n_sites != es.n_sites()) throw std::invalid_argument("graph and eigensystem sizes differ");
}

std::span<const Complex> ReducedStates::gathered(std::size_t n) const {
  auto& slot = cache_.at(n);
  if (slot.empty()) {
    const CVector full = eigenstate_full(es_, n);
    slot = gather_bipartite(std::span<const Complex>(full.data(), static_cast<std::size_t>(full.size())), bp_);
  }
  return slot;
}

void ReducedStates::prefetch_all() const {
  parallel_for(cache_.size(), [this](std::size_t n) { (void)gathered(n); });
}

CMatrix ReducedStates::rdm(std::size_t n, std::size_t m) const {
  return partial_trace_gathered(gathered(n), gathered(m), bp_);
}

std::vector<EthPoint> eth_profile(const EigenSystem& es, const SpinGraph& g) {
  const Bipartition bp(g);
  std::vector<EthPoint> out(es.size());
  parallel_for(es.size(), [&](std::size_t n) {
    const CVector phi = eigenstate_full(es, n);
    const auto gathered = gather_bipartite({phi.data(), static_cast<std::size_t>(phi.size())}, bp);
    out[n] = EthPoint{es.energy(n), partial_trace_gathered(gathered, gathered, bp)};
  });
  return out;
}

DiagonalEnsemble diagonal_ensemble(const OverlapCoefficients& c, const EigenSystem& es, const SpinGraph& g) {
  if (static_cast<std::size_t>(c.c.size()) != es.size()) throw std::invalid_argument("one coefficient per eigenstate");
  const double norm = c.c.squaredNorm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument(fmt::format("coefficients not normalized: sum |c|^2 = {:.12g}", norm));
  }
  const Bipartition bp(g);
  DiagonalEnsemble out{CMatrix::Zero(static_cast<Eigen::Index>(bp.subsystem_dim()),
                                     static_cast<Eigen::Index>(bp.subsystem_dim())),
                       false};
  std::vector<int> seen_groups;
  for (std::size_t n = 0; n < es.size(); ++n) {
    const double w = std::norm(c.c[static_cast<Eigen::Index>(n)]);
    if (w == 0.0) continue;
    if (std::sqrt(w) > 1e-12) {
      if (const int grp = es.degeneracy_group(n); grp >= 0) {
        if (std::find(seen_groups.begin(), seen_groups.end(), grp) != seen_groups.end()) {
          out.degenerate_support = true;
        } else {
          seen_groups.push_back(grp);
        }
      }
    }
    const CVector phi = eigenstate_full(es, n);
    const auto gathered = gather_bipartite({phi.data(), static_cast<std::size_t>(phi.size())}, bp);
    out.rho += w * partial_trace_gathered(gathered, gathered, bp);
  }
  return out;
}

void validate(const MixCoefficients& mc) {
  const auto d = static_cast<Eigen::Index>(mc.labels.size());
  if (mc.a.rows() != d || mc.a.cols() != d) throw std::invalid_argument("coefficient matrix must match label count");
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (mc.a(i, j) != std::conj(mc.a(j, i))) throw std::invalid_argument("coefficient matrix is not Hermitian");
    }
  }
  const Complex tr = mc.a.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > 1e-12) {
    throw std::invalid_argument(fmt::format("coefficient trace {} != 1", tr.real()));
  }
}

bool has_unit_squared_diagonal(const MixCoefficients& mc, double tol) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < mc.a.rows(); ++i) s += std::norm(mc.a(i, i));
  return std::abs(s - 1.0) <= tol;
}

CMatrix mixed_state(const MixCoefficients& mc, const EigenSystem& es, const SpinGraph& g) {
  validate(mc);
  for (std::size_t l : mc.labels) {
    if (l >= es.size()) throw std::out_of_range(fmt::format("label {} out of range", l));
  }
  const ReducedStates rs(es, g);
  const auto sdim = static_cast<Eigen::Index>(rs.bipartition().subsystem_dim());
  CMatrix rho = CMatrix::Zero(sdim, sdim);
  for (std::size_t i = 0; i < mc.labels.size(); ++i) {
    for (std::size_t j = 0; j < mc.labels.size(); ++j) {
      const Complex a = mc.a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (a == Complex(0.0, 0.0)) continue;
      // a_mn multiplies rho_nm = tr_B |Phi_n><Phi_m| with m = labels[i], n = labels[j].
      rho += a * rs.rdm(mc.labels[j], mc.labels[i]);
    }
  }
  return rho;
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double min_eigenvalue(const CMatrix& h) {
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace eigdecoh
