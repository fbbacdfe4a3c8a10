// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <vector>

#include "tweezercp/su2.hpp"

namespace tweezercp {

/// A rectangular pulse: H = 1/2 (Re W sx + Im W sy + D sz), held for tau.
struct Pulse {
  Complex omega{0.0, 0.0};  // rad/s
  double delta = 0.0;       // rad/s
  double tau = 0.0;         // s
};

/// Ordered pulse list; index 0 acts first.
struct CompositePulse {
  std::vector<Pulse> pulses;

  std::size_t size() const { return pulses.size(); }
  double total_duration() const;
  /// T_k = sum of the durations before pulse k; T_0 = 0.
  std::vector<double> start_times() const;
  /// Ideal (error-free) propagator of the whole sequence.
  Unitary2 ideal() const;
};

struct RotationParams {
  double area = 0.0;   // A, rad
  double rate = 0.0;   // dA/dt, rad/s
  double theta = 0.0;  // polar angle of the rotation axis
  double phi = 0.0;    // azimuth of the rotation axis
};

struct HardwareLimits {
  double omega_max = 0.0;  // rad/s
  double delta_max = 0.0;  // rad/s
  double chi_min = 0.1;
  double chi_max = 1.0;

  /// 2pi x 1 MHz on both controls.
  static HardwareLimits reference();
};

/// Bounded axis weights (W_theta, D_theta) at polar angle theta and their
/// derivatives with respect to theta.
struct AxisWeights {
  double omega = 0.0;
  double delta = 0.0;
  double d_omega = 0.0;
  double d_delta = 0.0;

  double norm() const;
};

AxisWeights axis_weights(double theta, const HardwareLimits& lim);

/// chi = rate / |(W_theta, D_theta)|
double rotation_chi(const RotationParams& p, const HardwareLimits& lim);

/// Pulse implementing p. Out-of-range chi is clamped with a warning.
Pulse rotation_to_pulse(const RotationParams& p, const HardwareLimits& lim);

/// Inverse of rotation_to_pulse: area, rate, polar angle and azimuth.
RotationParams pulse_to_rotation(const Pulse& pulse);

CompositePulse rect(double area, double phi, const HardwareLimits& lim);
CompositePulse sk1(double area, double phi, const HardwareLimits& lim);
CompositePulse bb1(double area, double phi, const HardwareLimits& lim);

/// Rotate every pulse axis by R_y(theta_tg - pi/2) at fixed area and rate.
/// Throws Unencodable if a rotated pulse needs chi outside the limits.
CompositePulse rotate_cp(const CompositePulse& cp, double theta_tg, const HardwareLimits& lim);

CompositePulse apply_global_phase(const CompositePulse& cp, double phi_tg);

}  // namespace tweezercp
