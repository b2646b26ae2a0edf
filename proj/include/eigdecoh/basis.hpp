// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "eigdecoh/config.hpp"
#include "eigdecoh/types.hpp"

namespace eigdecoh {

/// All configurations with exactly `n_up` up spins, ascending.
class SectorBasis {
 public:
  SectorBasis() = default;
  SectorBasis(int n_sites, int n_up);

  int n_sites() const { return n_sites_; }
  int n_up() const { return n_up_; }
  std::size_t size() const { return states_.size(); }
  Config operator[](std::size_t p) const { return states_[p]; }
  std::span<const Config> states() const { return states_; }

  /// Position of `c` in the list. `c` must have popcount n_up.
  std::size_t rank(Config c) const;
  bool contains(Config c) const { return popcount(c) == n_up_ && (c >> n_sites_) == 0; }

 private:
  int n_sites_ = 0;
  int n_up_ = 0;
  std::vector<Config> states_;
};

/// Throws std::out_of_range unless 0 <= n_up <= n_sites.
SectorBasis enumerate_sector(int n_sites, int n_up);

std::size_t binomial(int n, int k);

/// Subsystem/bath factorization of configurations. Subsystem bits are packed
/// in subsystem-list order; bath bits in ascending site order.
class Bipartition {
 public:
  explicit Bipartition(const SpinGraph& g);

  int n_sites() const { return n_sites_; }
  int subsystem_size() const { return static_cast<int>(subsystem_sites_.size()); }
  int bath_size() const { return static_cast<int>(bath_sites_.size()); }
  std::size_t subsystem_dim() const { return std::size_t{1} << subsystem_size(); }
  std::size_t bath_dim() const { return std::size_t{1} << bath_size(); }
  std::span<const int> subsystem_sites() const { return subsystem_sites_; }
  std::span<const int> bath_sites() const { return bath_sites_; }

  /// (s_bits, b_bits)
  std::pair<Config, Config> split(Config c) const;
  Config join(Config s_bits, Config b_bits) const;

  /// join(s, b) laid out at index s * bath_dim() + b.
  std::span<const Config> join_table() const { return join_table_; }

 private:
  int n_sites_;
  std::vector<int> subsystem_sites_;
  std::vector<int> bath_sites_;
  std::vector<Config> join_table_;
};

std::pair<Config, Config> split_config(Config c, const SpinGraph& g);

}  // namespace eigdecoh
