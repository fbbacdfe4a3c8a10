// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <cstddef>
#include <functional>

namespace tweezercp {

/// Worker count used by ensemble loops. 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(i) for i in [0, n) on the worker pool. Each index is visited
/// exactly once; callers write into per-index slots and reduce in order, so
/// results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tweezercp
