// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <atomic>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "eigdecoh/parallel.hpp"

using namespace eigdecoh;

TEST_CASE("each index runs exactly once for any thread count") {
  for (int threads : {1, 2, 3, 8}) {
    set_thread_count(threads);
    CHECK(thread_count() == threads);
    for (std::size_t n : {0u, 1u, 5u, 1000u}) {
      std::vector<int> hits(n, 0);
      parallel_for(n, [&](std::size_t i) { ++hits[i]; });
      CHECK(std::accumulate(hits.begin(), hits.end(), 0) == static_cast<int>(n));
      for (int h : hits) CHECK(h == 1);
    }
  }
  set_thread_count(0);
  CHECK(thread_count() >= 1);
}

TEST_CASE("exceptions propagate after all workers finish") {
  set_thread_count(4);
  std::atomic<int> done{0};
  CHECK_THROWS_AS(parallel_for(100,
                               [&](std::size_t i) {
                                 if (i == 37) throw std::runtime_error("boom");
                                 ++done;
                               }),
                  std::runtime_error);
  set_thread_count(0);
}
