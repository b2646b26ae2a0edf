// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eigdecoh/basis.hpp"
#include "eigdecoh/config.hpp"
#include "eigdecoh/pauli.hpp"
#include "eigdecoh/types.hpp"

namespace eigdecoh {

/// Sparse operator restricted to one magnetization sector (source) with image
/// in another (target). Entries are merged per (row, col) and never zero.
struct SectorBlockOperator {
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    Complex value;
  };

  int source_n_up = 0;
  int target_n_up = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Entry> entries;  // sorted by (row, col)

  /// y = B x; x over the source basis, y over the target basis.
  CVector apply(std::span<const Complex> x) const;
  CMatrix to_dense() const;
};

/// Sector blocks of H = 1/2 sum_<ij> sigma_i . sigma_j, indexed by n_up.
std::vector<SectorBlockOperator> heisenberg_blocks(const SpinGraph& g);

/// The same Hamiltonian in symbolic form: 1/2 sum (xx + yy + zz) per edge.
PauliStringSum heisenberg_pauli_sum(const SpinGraph& g);

/// prod_j sigma^+_j + prod_j sigma^-_j over the given sites.
PauliStringSum build_witness_W(std::span<const int> sites);
/// Sites 0..M-1.
PauliStringSum build_witness_W(int M);

/// prod_j sigma^z_j over the given sites.
PauliStringSum build_classical_C(std::span<const int> sites);
PauliStringSum build_classical_C(int M);

/// W and C act on the graph's subsystem; pauli_sum specs are taken verbatim.
PauliStringSum build_operator(const OperatorSpec& spec, const SpinGraph& g);

/// op * v on the full 2^n_sites space.
CVector apply(const PauliStringSum& op, std::span<const Complex> v, int n_sites);

/// Block of op mapping `source` into `target`. Throws std::invalid_argument
/// when target.n_up - source.n_up is not a shift op can produce.
SectorBlockOperator sector_block(const PauliStringSum& op, const SectorBasis& source, const SectorBasis& target);

/// Component of op * v in `target`, for v given over `source`.
CVector apply(const PauliStringSum& op, std::span<const Complex> v, const SectorBasis& source,
              const SectorBasis& target);

/// Dense matrix of op on the 2^|sites| space spanned by `sites`, with site
/// sites[k] mapped to bit k. Throws if op touches any other site.
CMatrix local_matrix(const PauliStringSum& op, std::span<const int> sites);

/// Dense matrix of op on the subsystem, indexed by subsystem bits.
CMatrix subsystem_matrix(const PauliStringSum& op, const SpinGraph& g);

/// Spectral norm, computed densely on the operator's support (at most 12
/// sites). Throws std::invalid_argument for non-Hermitian operators.
double operator_norm(const PauliStringSum& op, int n_sites);

}  // namespace eigdecoh
