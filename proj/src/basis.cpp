// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "eigdecoh/basis.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace eigdecoh {

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

SectorBasis::SectorBasis(int n_sites, int n_up) : n_sites_(n_sites), n_up_(n_up) {
  if (n_sites < 0 || n_sites > kMaxSites) throw std::out_of_range(fmt::format("n_sites {} out of range", n_sites));
  if (n_up < 0 || n_up > n_sites) {
    throw std::out_of_range(fmt::format("n_up {} out of range [0, {}]", n_up, n_sites));
  }
  states_.reserve(binomial(n_sites, n_up));
  if (n_up == 0) {
    states_.push_back(0);
    return;
  }
  // Gosper's hack: next larger integer with the same popcount.
  const Config limit = Config{1} << n_sites;
  for (Config c = (Config{1} << n_up) - 1; c < limit;) {
    states_.push_back(c);
    const Config lowest = c & (~c + 1);
    const Config ripple = c + lowest;
    c = (((ripple ^ c) >> 2) / lowest) | ripple;
  }
}

std::size_t SectorBasis::rank(Config c) const {
  // Ascending order with fixed popcount is colex order: rank = sum_i C(p_i, i)
  // over set-bit positions p_1 < p_2 < ...
  std::size_t r = 0;
  int i = 0;
  for (Config rest = c; rest != 0; rest &= rest - 1) {
    ++i;
    r += binomial(__builtin_ctzll(rest), i);
  }
  return r;
}

SectorBasis enumerate_sector(int n_sites, int n_up) { return SectorBasis(n_sites, n_up); }

Bipartition::Bipartition(const SpinGraph& g) : n_sites_(g.n_sites), subsystem_sites_(g.subsystem) {
  std::vector<bool> in_sub(g.n_sites, false);
  for (int s : subsystem_sites_) in_sub.at(s) = true;
  for (int i = 0; i < g.n_sites; ++i) {
    if (!in_sub[i]) bath_sites_.push_back(i);
  }
  join_table_.resize(std::size_t{1} << g.n_sites);
  const std::size_t bdim = bath_dim();
  for (Config s = 0; s < subsystem_dim(); ++s) {
    for (Config b = 0; b < bdim; ++b) join_table_[s * bdim + b] = join(s, b);
  }
}

std::pair<Config, Config> Bipartition::split(Config c) const {
  Config s = 0, b = 0;
  for (std::size_t k = 0; k < subsystem_sites_.size(); ++k) s |= ((c >> subsystem_sites_[k]) & 1u) << k;
  for (std::size_t k = 0; k < bath_sites_.size(); ++k) b |= ((c >> bath_sites_[k]) & 1u) << k;
  return {s, b};
}

Config Bipartition::join(Config s_bits, Config b_bits) const {
  Config c = 0;
  for (std::size_t k = 0; k < subsystem_sites_.size(); ++k) c |= ((s_bits >> k) & 1u) << subsystem_sites_[k];
  for (std::size_t k = 0; k < bath_sites_.size(); ++k) c |= ((b_bits >> k) & 1u) << bath_sites_[k];
  return c;
}

std::pair<Config, Config> split_config(Config c, const SpinGraph& g) {
  Config s = 0, b = 0;
  for (std::size_t k = 0; k < g.subsystem.size(); ++k) s |= ((c >> g.subsystem[k]) & 1u) << k;
  int nb = 0;
  for (int i = 0; i < g.n_sites; ++i) {
    if (std::find(g.subsystem.begin(), g.subsystem.end(), i) != g.subsystem.end()) continue;
    b |= ((c >> i) & 1u) << nb++;
  }
  return {s, b};
}

}  // namespace eigdecoh
