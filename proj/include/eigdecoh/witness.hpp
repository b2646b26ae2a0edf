// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "eigdecoh/operators.hpp"
#include "eigdecoh/spectral.hpp"
#include "eigdecoh/types.hpp"

namespace eigdecoh {

/// A validated quantumness witness: Hermitian, unit operator norm, acting
/// inside the subsystem. Evaluates w(rho) = |tr(rho A)|.
class Witness {
 public:
  /// Throws std::invalid_argument if A is not Hermitian, its norm differs
  /// from 1 by more than 1e-10, or it touches bath sites.
  Witness(const PauliStringSum& op, const SpinGraph& g);

  double operator()(const CMatrix& rho) const;
  const CMatrix& matrix() const { return matrix_; }

 private:
  CMatrix matrix_;
};

double quantumness(const CMatrix& rho, const PauliStringSum& op, const SpinGraph& g);

/// <Phi_a|A|Phi_b>; exactly zero when the sectors are not linked by A.
Complex matrix_element(const EigenSystem& es, const PauliStringSum& op, std::size_t a, std::size_t b);

struct PairWitness {
  double w = 0.0;      // 1/2 <Phi_m + Phi_n|A|Phi_m + Phi_n>, depends on eigenvector phases
  double w_abs = 0.0;  // |<Phi_m|A|Phi_n>|, phase independent
};

/// Throws std::out_of_range for bad labels, std::invalid_argument for m == n
/// or a non-Hermitian operator.
PairWitness pair_witness(std::size_t m, std::size_t n, const PauliStringSum& op, const EigenSystem& es);

struct WitnessRecord {
  std::size_t m = 0;  // m < n
  std::size_t n = 0;
  int sector_m = 0;
  int sector_n = 0;
  double energy_m = 0.0;
  double energy_n = 0.0;
  double gap = 0.0;
  double w = 0.0;
  double w_abs = 0.0;
  std::string operator_id;
  /// m or n has a sector eigenvector that is not unique (within-sector degeneracy).
  bool degenerate = false;
};

struct ScanResult {
  std::vector<WitnessRecord> records;  // ordered by (gap, m, n)
  std::size_t structural_zero_pairs = 0;
  std::size_t beyond_gap_pairs = 0;
};

/// Every unordered pair with gap <= gap_max whose sectors A can connect.
ScanResult witness_scan(const EigenSystem& es, const PauliStringSum& op, double gap_max,
                        const std::string& operator_id = "A");

struct Bin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  double median = std::numeric_limits<double>::quiet_NaN();
  double mean = std::numeric_limits<double>::quiet_NaN();
  double max = std::numeric_limits<double>::quiet_NaN();
  double center() const { return 0.5 * (lo + hi); }
};

struct BinnedStats {
  double width = 0.0;
  std::vector<Bin> bins;
  std::size_t used = 0;
  std::size_t excluded_degenerate = 0;
};

struct BinOptions {
  /// Statistic on w_abs when true, on |w| otherwise.
  bool use_abs = true;
  bool exclude_degenerate = true;
};

/// Uniform bins [i*width, (i+1)*width) covering [0, max gap]. Throws
/// std::invalid_argument for width <= 0 or when no record is usable.
BinnedStats bin_stats(const std::vector<WitnessRecord>& records, double width, BinOptions opts = {});

/// Spearman rank correlation with average ranks for ties; NaN for fewer than
/// two points or constant input.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Small-gap behaviour of a scan: the lowest bin against bins centered in
/// [mid_lo, mid_hi], plus the rank correlation of gap and w_abs below
/// correlation_gap.
struct SuppressionSummary {
  double lowest_median = 0.0;
  double mid_min_median = 0.0;   // smallest median among mid bins
  double mid_pooled_median = 0.0;  // median of all records in mid bins
  std::size_t mid_bins = 0;
  double ratio = 0.0;  // lowest_median / mid_pooled_median
  double spearman_low_gap = 0.0;
  bool lowest_below_every_mid = false;
};

SuppressionSummary suppression_summary(const std::vector<WitnessRecord>& records, const BinnedStats& stats,
                                       double mid_lo = 2.0, double mid_hi = 5.0, double correlation_gap = 2.0,
                                       BinOptions opts = {});

}  // namespace eigdecoh
