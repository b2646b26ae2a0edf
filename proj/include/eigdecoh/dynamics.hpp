// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Quench dynamics in the eigenbasis: Psi_t = sum_n c_n exp(-i E_n t) Phi_n.

#include <optional>
#include <span>
#include <vector>

#include "eigdecoh/spectral.hpp"
#include "eigdecoh/witness.hpp"

namespace eigdecoh {

/// c_n = <Phi_n|psi0>. Throws std::invalid_argument on a wrong dimension or
/// when |psi0| differs from 1 by more than 1e-10.
OverlapCoefficients overlaps(const CVector& psi0, const EigenSystem& es);

/// Bath configuration 0101... over bath sites in ascending order (first bath
/// site down, second up, ...).
Config neel_bath_bits(const SpinGraph& g);

/// (|up...up>_S + |down...down>_S)/sqrt(2) (x) |bath_bits>_B.
CVector cat_initial(const SpinGraph& g, Config bath_bits);

CVector evolve_state(const OverlapCoefficients& c, double t, const EigenSystem& es);

/// Subsystem state at time t. Forms Psi_t in the full space and traces out
/// the bath, O(2^N) per time instead of the O(D^2) double sum.
CMatrix evolve_rdm(const OverlapCoefficients& c, double t, const EigenSystem& es, const SpinGraph& g);

struct TimeSeriesRow {
  double t = 0.0;
  double w = 0.0;
  double purity = 0.0;     // tr(rho^2)
  double trace_err = 0.0;  // |tr(rho) - 1|
};

/// Witness value, purity and trace error along the grid (parallel over t).
std::vector<TimeSeriesRow> witness_timeseries(const CVector& psi0, const PauliStringSum& op,
                                              std::span<const double> times, const EigenSystem& es,
                                              const SpinGraph& g);

/// First grid time with w(t) <= threshold_fraction * w(0), or nullopt if the
/// series never gets there. Throws std::invalid_argument if w(0) == 0 or the
/// series is empty.
std::optional<double> decoherence_time(const std::vector<TimeSeriesRow>& series,
                                       double threshold_fraction = 0.36787944117144233);

/// Average of evolve_rdm over [0, T] on n_samples uniform points with
/// trapezoid weights, which is exact for periods dividing T.
CMatrix time_average_rdm(const OverlapCoefficients& c, double T, std::size_t n_samples, const EigenSystem& es,
                         const SpinGraph& g);

}  // namespace eigdecoh
