// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace eigdecoh {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Computational-basis configuration. Bit i set means site i is up
/// (sigma^z eigenvalue +1); site 0 is the least significant bit.
using Config = std::uint64_t;

inline constexpr int kMaxSites = 24;

inline int popcount(Config c) { return __builtin_popcountll(c); }

}  // namespace eigdecoh
