// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eigdecoh/basis.hpp"
#include "eigdecoh/spectral.hpp"
#include "eigdecoh/types.hpp"

namespace eigdecoh {

/// tr_B |u><v|, a 2^M x 2^M matrix indexed by subsystem bits:
/// rho(s, s') = sum_b u[join(s, b)] * conj(v[join(s', b)]).
CMatrix transition_rdm(std::span<const Complex> u, std::span<const Complex> v, const Bipartition& bp);
CMatrix transition_rdm(const CVector& u, const CVector& v, const SpinGraph& g);

/// Full-space vector regrouped as a row-major (subsystem x bath) array, the
/// layout the partial-trace kernel consumes.
std::vector<Complex> gather_bipartite(std::span<const Complex> full, const Bipartition& bp);

/// rho(s, s') from two gathered arrays.
CMatrix partial_trace_gathered(std::span<const Complex> u, std::span<const Complex> v, const Bipartition& bp);

/// Transition RDMs between eigenstates, rho_nm = tr_B |Phi_n><Phi_m|, with
/// gathered eigenvectors cached on first use. Concurrent calls are safe only
/// after prefetch_all().
class ReducedStates {
 public:
  ReducedStates(const EigenSystem& es, const SpinGraph& g);

  const Bipartition& bipartition() const { return bp_; }
  const EigenSystem& eigensystem() const { return es_; }
  CMatrix rdm(std::size_t n, std::size_t m) const;
  std::span<const Complex> gathered(std::size_t n) const;
  void prefetch_all() const;

 private:
  const EigenSystem& es_;
  Bipartition bp_;
  mutable std::vector<std::vector<Complex>> cache_;
};

struct EthPoint {
  double energy;
  CMatrix rho;
};

/// rho_nn for every eigenstate, in global (energy) order.
std::vector<EthPoint> eth_profile(const EigenSystem& es, const SpinGraph& g);

struct DiagonalEnsemble {
  CMatrix rho;
  /// Two supported eigenstates (|c| > 1e-12) share a degeneracy group, so the
  /// no-degeneracy assumption behind the diagonal ensemble fails.
  bool degenerate_support = false;
};

/// sum_n |c_n|^2 rho_nn. Throws std::invalid_argument if sum |c_n|^2 != 1 within 1e-10.
DiagonalEnsemble diagonal_ensemble(const OverlapCoefficients& c, const EigenSystem& es, const SpinGraph& g);

/// Hermitian coefficients a over a label set; trace convention sum_n a_nn = 1.
struct MixCoefficients {
  std::vector<std::size_t> labels;
  CMatrix a;
};

/// Throws std::invalid_argument unless a is Hermitian and sum a_nn = 1 (1e-12).
void validate(const MixCoefficients& mc);

/// Diagnostic for the alternative normalization sum_n |a_nn|^2 = 1.
bool has_unit_squared_diagonal(const MixCoefficients& mc, double tol = 1e-12);

/// sum_{m,n in labels} a_mn rho_nm.
CMatrix mixed_state(const MixCoefficients& mc, const EigenSystem& es, const SpinGraph& g);

/// 1/2 * sum |eigenvalues(a - b)| for Hermitian a, b.
double trace_distance(const CMatrix& a, const CMatrix& b);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const CMatrix& h);

}  // namespace eigdecoh
