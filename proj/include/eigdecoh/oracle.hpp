// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Brute-force references for tests and `selftest`. Nothing here is on the
// production path: operators are dense Kronecker products, partial traces are
// index-grouped sums, and the subsystem dynamics is the explicit double sum
// over eigenstate pairs.

#include <string>
#include <vector>

#include "eigdecoh/config.hpp"
#include "eigdecoh/pauli.hpp"
#include "eigdecoh/spectral.hpp"
#include "eigdecoh/types.hpp"

namespace eigdecoh::oracle {

inline constexpr int kMaxDenseSites = 8;
inline constexpr int kMaxDoubleSumSites = 6;

/// 1/2 sum_<ij> (x_i x_j + y_i y_j + z_i z_j) from 2x2 Kronecker factors.
CMatrix dense_hamiltonian(const SpinGraph& g);

/// Dense 2^N matrix of a Pauli-string sum from Kronecker factors.
CMatrix dense_operator(const PauliStringSum& op, int n_sites);

/// Sector blocks scattered back into the full space.
CMatrix assemble_full(const std::vector<SectorBlockOperator>& blocks, int n_sites);

/// Eigenvalues via the general (non-Hermitian) complex Schur solver, sorted.
std::vector<double> dense_spectrum(const CMatrix& h);

/// tr_B of a full-space operator by summing entries with equal bath bits.
CMatrix dense_partial_trace(const CMatrix& rho_full, const SpinGraph& g);

/// rho_nm = tr_B |Phi_n><Phi_m| for every pair, from dense outer products.
/// Indexed [n * D + m].
std::vector<CMatrix> all_transition_rdms(const EigenSystem& es, const SpinGraph& g);

/// sum_{n,m} c_n conj(c_m) exp(-i (E_n - E_m) t) rho_nm.
CMatrix rdm_double_sum(const OverlapCoefficients& c, double t, const EigenSystem& es,
                       const std::vector<CMatrix>& rdms);

/// 1/2 <Phi_m + Phi_n| A |Phi_m + Phi_n> with a dense A.
double dense_pair_witness(const CMatrix& a_full, const CVector& phi_m, const CVector& phi_n);

struct SelftestCheck {
  std::string name;
  bool passed = false;
  double error = 0.0;
  double tolerance = 0.0;
};

/// Oracle-equivalence suite: every fast path with a dense reference.
std::vector<SelftestCheck> run_selftest();

}  // namespace eigdecoh::oracle
