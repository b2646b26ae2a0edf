// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "eigdecoh/config.hpp"
#include "eigdecoh/types.hpp"

namespace eigdecoh::testing {

inline CVector random_state(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> nd;
  CVector v(dim);
  for (auto& x : v) x = Complex(nd(rng), nd(rng));
  return v / v.norm();
}

inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline SpinGraph make_graph(int n, std::vector<std::pair<int, int>> edges, std::vector<int> subsystem) {
  SpinGraph g;
  g.n_sites = n;
  g.edges = std::move(edges);
  g.subsystem = std::move(subsystem);
  validate(g);
  return g;
}

}  // namespace eigdecoh::testing
