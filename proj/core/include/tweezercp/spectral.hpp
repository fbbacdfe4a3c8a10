// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <vector>

#include <Eigen/Core>

#include "tweezercp/motion.hpp"
#include "tweezercp/pulses.hpp"
#include "tweezercp/su2.hpp"

namespace tweezercp {

using Vec3c = Eigen::Vector3cd;

/// Transverse control Hamiltonian seen in the frame of the ideal evolution,
/// h(t) = Tr[sigma U_c^dag(t) H_perp(t) U_c(t)] in rad/s.
///
/// Each pulse gets its own uniform sub-grid so pulse edges are samples.
/// h jumps at pulse edges, so both one-sided limits are kept; h_left[0] and
/// h_right.back() are zero (the signal is supported on [0, T]).
struct FrameSignal {
  std::vector<double> t;
  std::vector<Vec3> h_left;
  std::vector<Vec3> h_right;

  std::size_t size() const { return t.size(); }
  double duration() const { return t.back(); }
};

struct FilterFunction {
  std::vector<double> omega;  // rad/s
  std::vector<Vec3c> r;

  double r2(std::size_t i) const { return r[i].squaredNorm(); }
};

/// Ensemble periodogram S(w) = <|int_0^Tw de(t) e^{-iwt} dt|^2> / Tw on the
/// two-sided FFT grid w_k = 2 pi k / Tw, ascending.
struct ErrorSpectrum {
  std::vector<double> omega;
  std::vector<double> S;
  double mean_eps = 0.0;
  double window = 0.0;  // Tw, s

  double bin_width() const;
};

/// Per-pulse sub-steps are at most dt long.
FrameSignal frame_signal(const CompositePulse& cp, double dt);

/// r(w) = 1/2 int h(t) e^{-iwt} dt by trapezoid on the frame grid.
FilterFunction filter_amplitude(const FrameSignal& sig, const std::vector<double>& omega);
Vec3c filter_amplitude_at(const FrameSignal& sig, double omega);

/// D with target^dag U_c(T) = exp(+i D.sigma), i.e. 1/2 Im Tr[sigma log(target^dag U_c)].
RotationVector displacement(const Unitary2& target, const CompositePulse& cp);

/// a = 1/2 int eps(t) h(t) dt; eps sampled on the frame grid.
RotationVector first_order_a(const std::vector<double>& eps, const FrameSignal& sig);

/// G = |<eps> r(0) - D|^2
double residual_bias(double mean_eps, const Vec3& r0, const RotationVector& D);
double residual_bias(double mean_eps, const FilterFunction& ff, const RotationVector& D);

/// Realizations share the grid t_j = j dt. Each is mean-subtracted by the
/// scalar ensemble-and-time mean before the transform.
ErrorSpectrum power_spectrum(const std::vector<std::vector<double>>& realizations, double dt);

/// eps(j dt), j < n, for every sample.
std::vector<std::vector<double>> error_realizations(const std::vector<AtomSample>& samples,
                                                    const MotionContext& motion, double dt,
                                                    std::size_t n);

/// G + (1/2pi) sum_k |r(w_k)|^2 S(w_k) dw; ff must be on the spectrum grid.
double leading_order_infidelity(double G, const FilterFunction& ff, const ErrorSpectrum& spec);

}  // namespace tweezercp
