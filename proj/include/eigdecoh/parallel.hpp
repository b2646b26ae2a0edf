// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace eigdecoh {

/// Worker count used by parallel_for; 0 selects std::thread::hardware_concurrency().
void set_thread_count(int n);
int thread_count();

/// Calls body(i) for i in [0, n), split into contiguous chunks over the
/// configured number of threads. body must only write state owned by index i,
/// so results never depend on the thread count. The first exception thrown by
/// any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace eigdecoh
