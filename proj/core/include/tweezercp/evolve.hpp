// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <functional>
#include <vector>

#include "tweezercp/motion.hpp"
#include "tweezercp/pulses.hpp"
#include "tweezercp/su2.hpp"

namespace tweezercp {

/// Segment boundaries s_0 = 0 < ... < s_m = T. pinned[k] is the boundary
/// index carrying pulse time T_k (pinned.back() == m for the end time).
struct SegmentGrid {
  std::vector<double> boundaries;
  std::vector<int> pinned;

  int segments() const { return static_cast<int>(boundaries.size()) - 1; }
  double total() const { return boundaries.back(); }
};

/// Uniform grid of m segments on [0, T] with the boundary nearest each pulse
/// start moved onto it. Throws AmbiguousMapping if two pulse times share a
/// nearest boundary.
SegmentGrid align_segments(const std::vector<double>& pulse_starts, double total, int m);

SegmentGrid align_segments(const CompositePulse& cp, int m);

using ErrorSignal = std::function<double(double)>;

/// Ordered product of midpoint-sampled segment propagators, latest leftmost.
Unitary2 evolve(const CompositePulse& cp, const ErrorSignal& eps, const SegmentGrid& grid);

/// Same, restricted to segments [first, last).
Unitary2 evolve(const CompositePulse& cp, const ErrorSignal& eps, const SegmentGrid& grid,
                int first, int last);

struct EnsembleResult {
  double fidelity = 0.0;
  double std_error = 0.0;
  std::vector<double> per_sample;

  double infidelity() const { return 1.0 - fidelity; }
};

EnsembleResult ensemble_fidelity(const CompositePulse& cp, const Unitary2& target,
                                 const std::vector<AtomSample>& samples,
                                 const MotionContext& motion, int m);

}  // namespace tweezercp
