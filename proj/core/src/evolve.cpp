// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "tweezercp/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tweezercp/errors.hpp"
#include "tweezercp/parallel.hpp"

namespace tweezercp {

SegmentGrid align_segments(const std::vector<double>& pulse_starts, double total, int m) {
  if (m < 1 || !(total > 0.0)) {
    throw AmbiguousMapping("segment grid needs m >= 1 and a positive duration");
  }
  SegmentGrid grid;
  grid.boundaries.resize(static_cast<std::size_t>(m) + 1);
  for (int l = 0; l <= m; ++l) {
    grid.boundaries[static_cast<std::size_t>(l)] = total * l / m;
  }
  std::vector<double> times = pulse_starts;
  times.push_back(total);
  std::vector<bool> taken(grid.boundaries.size(), false);
  for (double t : times) {
    const double x = t / total * m;
    const int l = std::clamp(static_cast<int>(std::lround(x)), 0, m);
    if (taken[static_cast<std::size_t>(l)]) {
      throw AmbiguousMapping("pulse times share segment boundary " + std::to_string(l) +
                             " at m = " + std::to_string(m));
    }
    taken[static_cast<std::size_t>(l)] = true;
    grid.boundaries[static_cast<std::size_t>(l)] = t;
    grid.pinned.push_back(l);
  }
  for (std::size_t l = 1; l < grid.boundaries.size(); ++l) {
    if (!(grid.boundaries[l] > grid.boundaries[l - 1])) {
      throw AmbiguousMapping("aligned segment boundaries are not increasing at m = " +
                             std::to_string(m));
    }
  }
  return grid;
}

SegmentGrid align_segments(const CompositePulse& cp, int m) {
  return align_segments(cp.start_times(), cp.total_duration(), m);
}

Unitary2 evolve(const CompositePulse& cp, const ErrorSignal& eps, const SegmentGrid& grid) {
  return evolve(cp, eps, grid, 0, grid.segments());
}

Unitary2 evolve(const CompositePulse& cp, const ErrorSignal& eps, const SegmentGrid& grid,
                int first, int last) {
  const double total = cp.total_duration();
  if (std::abs(grid.total() - total) > 1e-12 * total) {
    throw GridMismatch("segment grid does not span the composite pulse");
  }
  const std::vector<double> starts = cp.start_times();
  Unitary2 u;
  for (int l = first; l < last; ++l) {
    const double s0 = grid.boundaries[static_cast<std::size_t>(l)];
    const double s1 = grid.boundaries[static_cast<std::size_t>(l) + 1];
    const double mid = 0.5 * (s0 + s1);
    const auto k = static_cast<std::size_t>(
        std::upper_bound(starts.begin(), starts.end(), mid) - starts.begin() - 1);
    const Pulse& p = cp.pulses[k];
    u = segment_propagator(p.omega * (1.0 + eps(mid)), p.delta, s1 - s0) * u;
  }
  return u;
}

EnsembleResult ensemble_fidelity(const CompositePulse& cp, const Unitary2& target,
                                 const std::vector<AtomSample>& samples,
                                 const MotionContext& motion, int m) {
  if (samples.empty()) {
    throw ConfigError("ensemble_fidelity needs at least one sample");
  }
  const SegmentGrid grid = align_segments(cp, m);
  std::vector<double> infidelity(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const AtomSample& s = samples[i];
    const Unitary2 u = evolve(cp, [&](double t) { return motion.epsilon(s, t); }, grid);
    infidelity[i] = gate_infidelity(target, u);
  });
  const auto n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : infidelity) {
    sum += x;
  }
  const double mean = sum / n;
  double var = 0.0;
  for (double x : infidelity) {
    var += (x - mean) * (x - mean);
  }
  EnsembleResult r;
  r.fidelity = 1.0 - mean;
  r.std_error = samples.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
  r.per_sample.reserve(samples.size());
  for (double x : infidelity) {
    r.per_sample.push_back(1.0 - x);
  }
  return r;
}

}  // namespace tweezercp
