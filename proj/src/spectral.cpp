// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "eigdecoh/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "eigdecoh/error.hpp"
#include "eigdecoh/parallel.hpp"

namespace eigdecoh {

EigenSystem::EigenSystem(int n_sites, std::vector<SectorEigen> sectors, double degeneracy_tolerance)
    : n_sites_(n_sites), tol_(degeneracy_tolerance), sectors_(std::move(sectors)) {
  for (int k = 0; k < static_cast<int>(sectors_.size()); ++k) {
    for (Eigen::Index p = 0; p < sectors_[k].energies.size(); ++p) {
      labels_.push_back({k, static_cast<std::size_t>(p)});
    }
  }
  std::stable_sort(labels_.begin(), labels_.end(), [this](const EigenLabel& a, const EigenLabel& b) {
    const double ea = sectors_[a.sector].energies[static_cast<Eigen::Index>(a.position)];
    const double eb = sectors_[b.sector].energies[static_cast<Eigen::Index>(b.position)];
    if (ea != eb) return ea < eb;
    return a.sector != b.sector ? a.sector < b.sector : a.position < b.position;
  });

  energies_.resize(labels_.size());
  global_of_.resize(sectors_.size());
  for (std::size_t k = 0; k < sectors_.size(); ++k) global_of_[k].resize(sectors_[k].basis.size());
  for (std::size_t n = 0; n < labels_.size(); ++n) {
    const auto& l = labels_[n];
    energies_[n] = sectors_[l.sector].energies[static_cast<Eigen::Index>(l.position)];
    global_of_[l.sector][l.position] = n;
  }

  group_of_.assign(labels_.size(), -1);
  ambiguous_.assign(labels_.size(), 0);
  std::size_t start = 0;
  for (std::size_t n = 1; n <= labels_.size(); ++n) {
    if (n < labels_.size() && energies_[n] - energies_[n - 1] < tol_) continue;
    if (n - start >= 2) {
      std::vector<std::size_t> group(n - start);
      std::iota(group.begin(), group.end(), start);
      const int id = static_cast<int>(groups_.size());
      std::vector<int> per_sector(sectors_.size(), 0);
      for (std::size_t m : group) {
        group_of_[m] = id;
        ++per_sector[labels_[m].sector];
      }
      for (std::size_t m : group) {
        if (per_sector[labels_[m].sector] >= 2) ambiguous_[m] = 1;
      }
      groups_.push_back(std::move(group));
    }
    start = n;
  }
}

std::span<const Complex> EigenSystem::vector(std::size_t n) const {
  const auto& l = label(n);
  const auto& s = sectors_[l.sector];
  return {s.vectors.col(static_cast<Eigen::Index>(l.position)).data(), s.basis.size()};
}

std::size_t EigenSystem::global_label(int sector, std::size_t position) const {
  return global_of_.at(static_cast<std::size_t>(sector)).at(position);
}

void fix_gauge(Eigen::Ref<CVector> v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) return;
  const Complex phase = std::conj(v[best]) / best_abs;
  v *= phase;
  v[best] = Complex(v[best].real(), 0.0);
}

EigenSystem diagonalize(const std::vector<SectorBlockOperator>& blocks, int n_sites, double degeneracy_tolerance) {
  if (static_cast<int>(blocks.size()) != n_sites + 1) {
    throw std::invalid_argument("expected one block per magnetization sector");
  }
  std::vector<SectorEigen> sectors(blocks.size());
  parallel_for(blocks.size(), [&](std::size_t k) {
    const auto& block = blocks[k];
    if (block.source_n_up != static_cast<int>(k) || block.target_n_up != static_cast<int>(k)) {
      throw std::invalid_argument(fmt::format("block {} is not a diagonal sector block", k));
    }
    SectorEigen out{SectorBasis(n_sites, static_cast<int>(k)), {}, {}};
    const CMatrix h = block.to_dense();
    const Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
      throw NumericalError(fmt::format("eigensolver did not converge in sector n_up={}", k));
    }
    out.energies = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    for (Eigen::Index p = 0; p < out.vectors.cols(); ++p) fix_gauge(out.vectors.col(p));

    for (Eigen::Index p = 0; p < out.vectors.cols(); ++p) {
      const double e = out.energies[p];
      const double residual = (h * out.vectors.col(p) - e * out.vectors.col(p)).norm();
      if (residual > 1e-9 * std::max(1.0, std::abs(e))) {
        throw NumericalError(fmt::format("sector n_up={}: residual {:.3e} for eigenpair {}", k, residual, p));
      }
    }
    const CMatrix gram = out.vectors.adjoint() * out.vectors;
    const double ortho = (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (ortho > 1e-10) {
      throw NumericalError(fmt::format("sector n_up={}: orthonormality error {:.3e}", k, ortho));
    }
    sectors[k] = std::move(out);
  });
  return EigenSystem(n_sites, std::move(sectors), degeneracy_tolerance);
}

EigenSystem diagonalize(const SpinGraph& g, double degeneracy_tolerance) {
  return diagonalize(heisenberg_blocks(g), g.n_sites, degeneracy_tolerance);
}

CVector eigenstate_full(const EigenSystem& es, std::size_t n) {
  if (n >= es.size()) throw std::out_of_range(fmt::format("eigenstate label {} out of range", n));
  const auto& s = es.sector(es.sector_of(n));
  const auto coeffs = es.vector(n);
  CVector full = CVector::Zero(Eigen::Index{1} << es.n_sites());
  for (std::size_t p = 0; p < s.basis.size(); ++p) full[static_cast<Eigen::Index>(s.basis[p])] = coeffs[p];
  return full;
}

EigenSystem rephased(const EigenSystem& es, std::span<const double> phases) {
  if (phases.size() != es.size()) throw std::invalid_argument("one phase per eigenstate expected");
  std::vector<SectorEigen> sectors;
  for (int k = 0; k < es.sector_count(); ++k) sectors.push_back(es.sector(k));
  for (std::size_t n = 0; n < es.size(); ++n) {
    const auto& l = es.label(n);
    sectors[l.sector].vectors.col(static_cast<Eigen::Index>(l.position)) *= std::polar(1.0, phases[n]);
  }
  return EigenSystem(es.n_sites(), std::move(sectors), es.degeneracy_tolerance());
}

}  // namespace eigdecoh
