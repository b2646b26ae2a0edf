// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "eigdecoh/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "eigdecoh/kernels/kernels.hpp"
#include "eigdecoh/parallel.hpp"
#include "eigdecoh/reduced.hpp"

namespace eigdecoh {

OverlapCoefficients overlaps(const CVector& psi0, const EigenSystem& es) {
  if (psi0.size() != (Eigen::Index{1} << es.n_sites())) throw std::invalid_argument("overlaps: dimension mismatch");
  const double norm = psi0.norm();
  if (std::abs(norm - 1.0) > 1e-10) throw std::invalid_argument(fmt::format("initial state norm {:.12g} != 1", norm));
  OverlapCoefficients out{CVector::Zero(static_cast<Eigen::Index>(es.size()))};
  std::vector<std::vector<Complex>> restricted(static_cast<std::size_t>(es.sector_count()));
  for (int k = 0; k < es.sector_count(); ++k) {
    const auto& basis = es.sector(k).basis;
    restricted[k].resize(basis.size());
    for (std::size_t p = 0; p < basis.size(); ++p) restricted[k][p] = psi0[static_cast<Eigen::Index>(basis[p])];
  }
  for (std::size_t n = 0; n < es.size(); ++n) {
    out.c[static_cast<Eigen::Index>(n)] = kernels::cdot(es.vector(n), restricted[es.sector_of(n)]);
  }
  return out;
}

Config neel_bath_bits(const SpinGraph& g) {
  Config b = 0;
  for (int k = 0; k < g.bath_size(); ++k) {
    if (k % 2 == 1) b |= Config{1} << k;
  }
  return b;
}

CVector cat_initial(const SpinGraph& g, Config bath_bits) {
  const Bipartition bp(g);
  if (bath_bits >= bp.bath_dim()) throw std::invalid_argument("bath configuration out of range");
  CVector psi = CVector::Zero(Eigen::Index{1} << g.n_sites);
  const Config all_up = bp.subsystem_dim() - 1;
  const double amp = 1.0 / std::sqrt(2.0);
  psi[static_cast<Eigen::Index>(bp.join(all_up, bath_bits))] = amp;
  psi[static_cast<Eigen::Index>(bp.join(0, bath_bits))] = amp;
  return psi;
}

namespace {

// Psi_t restricted to each sector: sum over the sector's eigenvectors.
void accumulate_state(const OverlapCoefficients& c, double t, const EigenSystem& es, CVector& psi) {
  const auto& k = kernels::active();
  std::vector<Complex> part;
  for (int s = 0; s < es.sector_count(); ++s) {
    const auto& sec = es.sector(s);
    part.assign(sec.basis.size(), Complex(0.0, 0.0));
    bool any = false;
    for (std::size_t p = 0; p < sec.basis.size(); ++p) {
      const std::size_t n = es.global_label(s, p);
      const Complex cn = c.c[static_cast<Eigen::Index>(n)];
      if (cn == Complex(0.0, 0.0)) continue;
      any = true;
      const Complex coeff = cn * std::polar(1.0, -es.energy(n) * t);
      k.caxpy(coeff, sec.vectors.col(static_cast<Eigen::Index>(p)).data(), part.data(), part.size());
    }
    if (!any) continue;
    for (std::size_t p = 0; p < sec.basis.size(); ++p) psi[static_cast<Eigen::Index>(sec.basis[p])] = part[p];
  }
}

CMatrix rdm_at(const OverlapCoefficients& c, double t, const EigenSystem& es, const Bipartition& bp) {
  CVector psi = CVector::Zero(Eigen::Index{1} << es.n_sites());
  accumulate_state(c, t, es, psi);
  const auto gathered = gather_bipartite({psi.data(), static_cast<std::size_t>(psi.size())}, bp);
  return partial_trace_gathered(gathered, gathered, bp);
}

}  // namespace

CVector evolve_state(const OverlapCoefficients& c, double t, const EigenSystem& es) {
  if (static_cast<std::size_t>(c.c.size()) != es.size()) throw std::invalid_argument("one coefficient per eigenstate");
  CVector psi = CVector::Zero(Eigen::Index{1} << es.n_sites());
  accumulate_state(c, t, es, psi);
  return psi;
}

CMatrix evolve_rdm(const OverlapCoefficients& c, double t, const EigenSystem& es, const SpinGraph& g) {
  if (static_cast<std::size_t>(c.c.size()) != es.size()) throw std::invalid_argument("one coefficient per eigenstate");
  return rdm_at(c, t, es, Bipartition(g));
}

std::vector<TimeSeriesRow> witness_timeseries(const CVector& psi0, const PauliStringSum& op,
                                              std::span<const double> times, const EigenSystem& es,
                                              const SpinGraph& g) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("time grid must be strictly increasing");
  }
  const Witness witness(op, g);
  const OverlapCoefficients c = overlaps(psi0, es);
  const Bipartition bp(g);
  std::vector<TimeSeriesRow> rows(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    const CMatrix rho = rdm_at(c, times[i], es, bp);
    rows[i] = TimeSeriesRow{times[i], witness(rho), (rho * rho).trace().real(), std::abs(rho.trace() - 1.0)};
  });
  return rows;
}

std::optional<double> decoherence_time(const std::vector<TimeSeriesRow>& series, double threshold_fraction) {
  if (series.empty()) throw std::invalid_argument("empty time series");
  const double w0 = series.front().w;
  if (w0 == 0.0) throw std::invalid_argument("decoherence time undefined for w(0) = 0");
  const double threshold = threshold_fraction * w0;
  for (const auto& row : series) {
    if (row.w <= threshold) return row.t;
  }
  return std::nullopt;
}

CMatrix time_average_rdm(const OverlapCoefficients& c, double T, std::size_t n_samples, const EigenSystem& es,
                         const SpinGraph& g) {
  if (!(T > 0.0)) throw std::invalid_argument("averaging window must be positive");
  if (n_samples < 2) throw std::invalid_argument("need at least two samples");
  if (static_cast<std::size_t>(c.c.size()) != es.size()) throw std::invalid_argument("one coefficient per eigenstate");
  const Bipartition bp(g);
  const double dt = T / static_cast<double>(n_samples - 1);
  const auto sdim = static_cast<Eigen::Index>(bp.subsystem_dim());
  // Fixed-size partial sums keep the result independent of the thread count.
  constexpr std::size_t kChunk = 256;
  const std::size_t n_chunks = (n_samples + kChunk - 1) / kChunk;
  std::vector<CMatrix> partial(n_chunks, CMatrix::Zero(sdim, sdim));
  parallel_for(n_chunks, [&](std::size_t ch) {
    const std::size_t hi = std::min(n_samples, (ch + 1) * kChunk);
    for (std::size_t i = ch * kChunk; i < hi; ++i) {
      const double weight = (i == 0 || i + 1 == n_samples) ? 0.5 : 1.0;
      partial[ch] += weight * rdm_at(c, dt * static_cast<double>(i), es, bp);
    }
  });
  CMatrix avg = CMatrix::Zero(sdim, sdim);
  for (const auto& p : partial) avg += p;
  return avg / static_cast<double>(n_samples - 1);
}

}  // namespace eigdecoh
