// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eigdecoh/basis.hpp"
#include "eigdecoh/operators.hpp"
#include "eigdecoh/types.hpp"

namespace eigdecoh {

/// Eigenpairs of one magnetization sector. Columns of `vectors` are
/// orthonormal eigenvectors over `basis`, energies ascending.
struct SectorEigen {
  SectorBasis basis;
  RVector energies;
  CMatrix vectors;
};

struct EigenLabel {
  int sector = 0;
  std::size_t position = 0;
};

/// Full spectrum assembled from sector solves. Global labels run over all
/// 2^N eigenpairs sorted by energy, ties broken by (sector, position).
class EigenSystem {
 public:
  EigenSystem(int n_sites, std::vector<SectorEigen> sectors, double degeneracy_tolerance);

  int n_sites() const { return n_sites_; }
  std::size_t size() const { return labels_.size(); }
  int sector_count() const { return static_cast<int>(sectors_.size()); }
  const SectorEigen& sector(int n_up) const { return sectors_.at(static_cast<std::size_t>(n_up)); }
  double degeneracy_tolerance() const { return tol_; }

  const EigenLabel& label(std::size_t n) const { return labels_.at(n); }
  int sector_of(std::size_t n) const { return label(n).sector; }
  double energy(std::size_t n) const { return energies_.at(n); }
  std::span<const double> energies() const { return energies_; }
  /// Coefficients of eigenvector n over its sector basis.
  std::span<const Complex> vector(std::size_t n) const;
  std::size_t global_label(int sector, std::size_t position) const;

  /// Groups of >= 2 labels with consecutive energy differences below the
  /// tolerance. Multiplets of the SU(2) symmetry span several sectors.
  const std::vector<std::vector<std::size_t>>& degeneracy_groups() const { return groups_; }
  /// Index into degeneracy_groups(), or -1.
  int degeneracy_group(std::size_t n) const { return group_of_.at(n); }
  /// True when n shares a degeneracy group with another label of the same
  /// sector, i.e. its sector eigenvector is not unique up to phase.
  bool ambiguous(std::size_t n) const { return ambiguous_.at(n) != 0; }

 private:
  int n_sites_;
  double tol_;
  std::vector<SectorEigen> sectors_;
  std::vector<EigenLabel> labels_;
  std::vector<double> energies_;
  std::vector<std::vector<std::size_t>> global_of_;  // [sector][position]
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<int> group_of_;
  std::vector<char> ambiguous_;
};

/// Rotates the eigenvector so its largest-magnitude entry (first one on ties)
/// is real and positive.
void fix_gauge(Eigen::Ref<CVector> v);

/// Dense Hermitian solve of every sector block (in parallel), gauge fixing,
/// residual and orthonormality checks, then the global merge. Throws
/// NumericalError naming the sector on failure.
EigenSystem diagonalize(const std::vector<SectorBlockOperator>& blocks, int n_sites, double degeneracy_tolerance);

/// Convenience: heisenberg_blocks + diagonalize.
EigenSystem diagonalize(const SpinGraph& g, double degeneracy_tolerance);

/// Eigenvector n embedded in the full 2^N space.
CVector eigenstate_full(const EigenSystem& es, std::size_t n);

/// Copy with eigenvector n multiplied by exp(i * phases[n]).
EigenSystem rephased(const EigenSystem& es, std::span<const double> phases);

/// Expansion coefficients c_n = <Phi_n|Psi> indexed by global label.
struct OverlapCoefficients {
  CVector c;
};

}  // namespace eigdecoh
