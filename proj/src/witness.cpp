// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "eigdecoh/witness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "eigdecoh/kernels/kernels.hpp"
#include "eigdecoh/parallel.hpp"

namespace eigdecoh {

Witness::Witness(const PauliStringSum& op, const SpinGraph& g) {
  const double norm = operator_norm(op, g.n_sites);
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument(fmt::format("witness operator norm is {:.12g}, expected 1", norm));
  }
  matrix_ = subsystem_matrix(op, g);
}

double Witness::operator()(const CMatrix& rho) const {
  if (rho.rows() != matrix_.rows() || rho.cols() != matrix_.cols()) {
    throw std::invalid_argument("density matrix does not match the subsystem dimension");
  }
  // tr(rho A) = sum_{s,s'} rho(s,s') A(s',s)
  return std::abs((rho.array() * matrix_.transpose().array()).sum());
}

double quantumness(const CMatrix& rho, const PauliStringSum& op, const SpinGraph& g) {
  return Witness(op, g)(rho);
}

namespace {

bool links(const std::vector<int>& shifts, int from, int to) {
  return std::binary_search(shifts.begin(), shifts.end(), to - from);
}

}  // namespace

Complex matrix_element(const EigenSystem& es, const PauliStringSum& op, std::size_t a, std::size_t b) {
  if (a >= es.size() || b >= es.size()) throw std::out_of_range("eigenstate label out of range");
  const int sa = es.sector_of(a);
  const int sb = es.sector_of(b);
  if (!links(magnetization_shifts(op), sb, sa)) return {0.0, 0.0};
  const CVector y = sector_block(op, es.sector(sb).basis, es.sector(sa).basis).apply(es.vector(b));
  return kernels::cdot(es.vector(a), {y.data(), static_cast<std::size_t>(y.size())});
}

PairWitness pair_witness(std::size_t m, std::size_t n, const PauliStringSum& op, const EigenSystem& es) {
  if (m >= es.size() || n >= es.size()) throw std::out_of_range("eigenstate label out of range");
  if (m == n) throw std::invalid_argument("pair witness needs two distinct eigenstates");
  if (!is_hermitian(op)) throw std::invalid_argument("operator is not Hermitian");
  const Complex amn = matrix_element(es, op, m, n);
  const double amm = matrix_element(es, op, m, m).real();
  const double ann = matrix_element(es, op, n, n).real();
  return {0.5 * (amm + ann) + amn.real(), std::abs(amn)};
}

ScanResult witness_scan(const EigenSystem& es, const PauliStringSum& op, double gap_max,
                        const std::string& operator_id) {
  if (!is_hermitian(op)) throw std::invalid_argument("operator is not Hermitian");
  const int n_sectors = es.sector_count();
  const auto shifts = magnetization_shifts(op);

  // Sector-to-sector blocks of A, keyed by (source, target).
  std::map<std::pair<int, int>, SectorBlockOperator> blocks;
  for (int k = 0; k < n_sectors; ++k) {
    for (int d : shifts) {
      const int t = k + d;
      if (t < 0 || t >= n_sectors) continue;
      blocks.emplace(std::make_pair(k, t), sector_block(op, es.sector(k).basis, es.sector(t).basis));
    }
  }

  std::vector<double> diag(es.size(), 0.0);
  if (std::binary_search(shifts.begin(), shifts.end(), 0)) {
    parallel_for(es.size(), [&](std::size_t n) {
      const int k = es.sector_of(n);
      const CVector y = blocks.at({k, k}).apply(es.vector(n));
      diag[n] = kernels::cdot(es.vector(n), {y.data(), static_cast<std::size_t>(y.size())}).real();
    });
  }

  struct PerSource {
    std::vector<WitnessRecord> records;
    std::size_t considered = 0;
    std::size_t beyond_gap = 0;
  };
  std::vector<PerSource> per(es.size());
  parallel_for(es.size(), [&](std::size_t n) {
    PerSource& out = per[n];
    const int k = es.sector_of(n);
    for (int d : shifts) {
      const int t = k + d;
      if (t < 0 || t >= n_sectors) continue;
      const auto& target = es.sector(t);
      const CVector y = blocks.at({k, t}).apply(es.vector(n));
      const std::span<const Complex> ys(y.data(), static_cast<std::size_t>(y.size()));
      for (std::size_t p = 0; p < target.basis.size(); ++p) {
        const std::size_t m = es.global_label(t, p);
        if (m >= n) continue;
        ++out.considered;
        const double gap = std::abs(es.energy(m) - es.energy(n));
        if (!(gap <= gap_max)) {
          ++out.beyond_gap;
          continue;
        }
        const Complex amn = kernels::cdot(es.vector(m), ys);
        WitnessRecord r;
        r.m = m;
        r.n = n;
        r.sector_m = t;
        r.sector_n = k;
        r.energy_m = es.energy(m);
        r.energy_n = es.energy(n);
        r.gap = gap;
        r.w = 0.5 * (diag[m] + diag[n]) + amn.real();
        r.w_abs = std::abs(amn);
        r.operator_id = operator_id;
        r.degenerate = es.ambiguous(m) || es.ambiguous(n);
        out.records.push_back(std::move(r));
      }
    }
  });

  ScanResult result;
  std::size_t considered = 0;
  for (auto& p : per) {
    considered += p.considered;
    result.beyond_gap_pairs += p.beyond_gap;
    result.records.insert(result.records.end(), std::make_move_iterator(p.records.begin()),
                          std::make_move_iterator(p.records.end()));
  }
  const std::size_t total_pairs = es.size() * (es.size() - 1) / 2;
  result.structural_zero_pairs = total_pairs - considered;
  std::sort(result.records.begin(), result.records.end(), [](const WitnessRecord& a, const WitnessRecord& b) {
    if (a.gap != b.gap) return a.gap < b.gap;
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  });
  return result;
}

namespace {

double record_value(const WitnessRecord& r, const BinOptions& opts) { return opts.use_abs ? r.w_abs : std::abs(r.w); }

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

BinnedStats bin_stats(const std::vector<WitnessRecord>& records, double width, BinOptions opts) {
  if (!(width > 0.0) || !std::isfinite(width)) throw std::invalid_argument("bin width must be > 0");
  if (records.empty()) throw std::invalid_argument("no witness records to bin");
  BinnedStats stats;
  stats.width = width;
  double max_gap = 0.0;
  for (const auto& r : records) {
    if (opts.exclude_degenerate && r.degenerate) {
      ++stats.excluded_degenerate;
      continue;
    }
    ++stats.used;
    max_gap = std::max(max_gap, r.gap);
  }
  if (stats.used == 0) throw std::invalid_argument("every witness record was excluded");
  const auto n_bins = static_cast<std::size_t>(std::floor(max_gap / width)) + 1;
  std::vector<std::vector<double>> values(n_bins);
  for (const auto& r : records) {
    if (opts.exclude_degenerate && r.degenerate) continue;
    const auto b = std::min(static_cast<std::size_t>(std::floor(r.gap / width)), n_bins - 1);
    values[b].push_back(record_value(r, opts));
  }
  stats.bins.resize(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    Bin& bin = stats.bins[b];
    bin.lo = width * static_cast<double>(b);
    bin.hi = width * static_cast<double>(b + 1);
    bin.count = values[b].size();
    if (bin.count == 0) continue;
    bin.mean = std::accumulate(values[b].begin(), values[b].end(), 0.0) / static_cast<double>(bin.count);
    bin.max = *std::max_element(values[b].begin(), values[b].end());
    bin.median = median_of(std::move(values[b]));
  }
  return stats;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: size mismatch");
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

SuppressionSummary suppression_summary(const std::vector<WitnessRecord>& records, const BinnedStats& stats,
                                       double mid_lo, double mid_hi, double correlation_gap, BinOptions opts) {
  SuppressionSummary s;
  if (stats.bins.empty()) throw std::invalid_argument("empty binned statistics");
  s.lowest_median = stats.bins.front().median;
  s.mid_min_median = std::numeric_limits<double>::infinity();
  std::vector<double> pooled;
  bool all_above = true;
  for (const auto& b : stats.bins) {
    const double c = b.center();
    if (c < mid_lo || c > mid_hi || b.count == 0) continue;
    ++s.mid_bins;
    s.mid_min_median = std::min(s.mid_min_median, b.median);
    if (!(s.lowest_median < b.median)) all_above = false;
  }
  std::vector<double> gaps, vals;
  for (const auto& r : records) {
    if (opts.exclude_degenerate && r.degenerate) continue;
    const auto bin = static_cast<std::size_t>(std::floor(r.gap / stats.width));
    if (bin < stats.bins.size()) {
      const double c = stats.bins[bin].center();
      if (c >= mid_lo && c <= mid_hi) pooled.push_back(record_value(r, opts));
    }
    if (r.gap <= correlation_gap) {
      gaps.push_back(r.gap);
      vals.push_back(record_value(r, opts));
    }
  }
  s.mid_pooled_median = median_of(std::move(pooled));
  s.ratio = s.lowest_median / s.mid_pooled_median;
  s.lowest_below_every_mid = s.mid_bins > 0 && all_above;
  s.spearman_low_gap = spearman(gaps, vals);
  return s;
}

}  // namespace eigdecoh
