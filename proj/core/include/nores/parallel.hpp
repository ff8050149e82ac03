// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace nores {

/// Caps the number of worker threads used by parallel_for. 0 restores the
/// default (hardware concurrency).
void set_max_threads(unsigned threads);
unsigned max_threads();

/// Runs body(i) for i in [0, count) across at most max_threads() workers
/// using contiguous static chunks. The first exception thrown by any body is
/// rethrown on the calling thread after all workers finish. Bodies must write
/// to disjoint outputs; callers do their own ordered reductions.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace nores
