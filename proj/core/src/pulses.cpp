// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "tweezercp/pulses.hpp"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "tweezercp/constants.hpp"
#include "tweezercp/errors.hpp"

namespace tweezercp {

using constants::kPi;
using constants::kTwoPi;

double CompositePulse::total_duration() const {
  double t = 0.0;
  for (const auto& p : pulses) {
    t += p.tau;
  }
  return t;
}

std::vector<double> CompositePulse::start_times() const {
  std::vector<double> starts;
  starts.reserve(pulses.size());
  double t = 0.0;
  for (const auto& p : pulses) {
    starts.push_back(t);
    t += p.tau;
  }
  return starts;
}

Unitary2 CompositePulse::ideal() const {
  Unitary2 u;
  for (const auto& p : pulses) {
    u = segment_propagator(p.omega, p.delta, p.tau) * u;
  }
  return u;
}

HardwareLimits HardwareLimits::reference() {
  HardwareLimits lim;
  lim.omega_max = kTwoPi * 1e6;
  lim.delta_max = kTwoPi * 1e6;
  return lim;
}

double AxisWeights::norm() const { return std::hypot(omega, delta); }

AxisWeights axis_weights(double theta, const HardwareLimits& lim) {
  const double seam = std::atan(lim.omega_max / lim.delta_max);
  AxisWeights w;
  if (theta <= seam) {
    const double t = std::tan(theta);
    w.omega = lim.delta_max * t;
    w.delta = lim.delta_max;
    w.d_omega = lim.delta_max * (1.0 + t * t);
  } else if (theta <= kPi - seam) {
    const double s = std::sin(theta);
    w.omega = lim.omega_max;
    w.delta = lim.omega_max * std::cos(theta) / s;
    w.d_delta = -lim.omega_max / (s * s);
  } else {
    const double t = std::tan(theta);
    w.omega = -lim.delta_max * t;
    w.delta = -lim.delta_max;
    w.d_omega = -lim.delta_max * (1.0 + t * t);
  }
  return w;
}

double rotation_chi(const RotationParams& p, const HardwareLimits& lim) {
  return p.rate / axis_weights(p.theta, lim).norm();
}

Pulse rotation_to_pulse(const RotationParams& p, const HardwareLimits& lim) {
  const AxisWeights w = axis_weights(p.theta, lim);
  double chi = p.rate / w.norm();
  if (chi < lim.chi_min || chi > lim.chi_max) {
    const double clamped = std::clamp(chi, lim.chi_min, lim.chi_max);
    spdlog::warn("chi = {:.6g} outside [{}, {}], clamped", chi, lim.chi_min, lim.chi_max);
    chi = clamped;
  }
  Pulse pulse;
  pulse.omega = std::polar(chi * w.omega, p.phi);
  pulse.delta = chi * w.delta;
  pulse.tau = p.area / (chi * w.norm());
  return pulse;
}

RotationParams pulse_to_rotation(const Pulse& pulse) {
  RotationParams p;
  const double amp = std::abs(pulse.omega);
  p.rate = std::hypot(amp, pulse.delta);
  p.area = p.rate * pulse.tau;
  p.theta = std::atan2(amp, pulse.delta);
  p.phi = amp > 0.0 ? std::arg(pulse.omega) : 0.0;
  return p;
}

namespace {

Pulse resonant(double area, double phi, const HardwareLimits& lim) {
  return Pulse{std::polar(lim.omega_max, phi), 0.0, area / lim.omega_max};
}

double correction_phase(double area) {
  const double c = -area / (4.0 * kPi);
  if (std::abs(c) > 1.0) {
    throw OutOfRange("composite pulse area outside the correctable range");
  }
  return std::acos(c);
}

}  // namespace

CompositePulse rect(double area, double phi, const HardwareLimits& lim) {
  return CompositePulse{{resonant(area, phi, lim)}};
}

CompositePulse sk1(double area, double phi, const HardwareLimits& lim) {
  const double p = correction_phase(area);
  return CompositePulse{{resonant(area, phi, lim), resonant(kTwoPi, phi + p, lim),
                         resonant(kTwoPi, phi - p, lim)}};
}

CompositePulse bb1(double area, double phi, const HardwareLimits& lim) {
  const double p = correction_phase(area);
  return CompositePulse{{resonant(kPi, phi + p, lim), resonant(kTwoPi, phi + 3.0 * p, lim),
                         resonant(kPi, phi + p, lim), resonant(area, phi, lim)}};
}

CompositePulse rotate_cp(const CompositePulse& cp, double theta_tg, const HardwareLimits& lim) {
  const double beta = theta_tg - kPi / 2.0;
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  CompositePulse out;
  out.pulses.reserve(cp.size());
  for (const auto& pulse : cp.pulses) {
    RotationParams p = pulse_to_rotation(pulse);
    const Vec3 n = axis_from_angles(p.theta, p.phi);
    const Vec3 r(cb * n.x() + sb * n.z(), n.y(), -sb * n.x() + cb * n.z());
    p.theta = std::acos(std::clamp(r.z(), -1.0, 1.0));
    p.phi = std::atan2(r.y(), r.x());
    const double chi = rotation_chi(p, lim);
    constexpr double kSlack = 1e-12;
    if (chi < lim.chi_min * (1.0 - kSlack) || chi > lim.chi_max * (1.0 + kSlack)) {
      throw Unencodable("rotated pulse needs chi outside the hardware limits");
    }
    const AxisWeights w = axis_weights(p.theta, lim);
    const double c = std::clamp(chi, lim.chi_min, lim.chi_max);
    out.pulses.push_back(
        Pulse{std::polar(c * w.omega, p.phi), c * w.delta, p.area / (c * w.norm())});
  }
  return out;
}

CompositePulse apply_global_phase(const CompositePulse& cp, double phi_tg) {
  CompositePulse out = cp;
  const Complex phase = std::polar(1.0, phi_tg);
  for (auto& p : out.pulses) {
    p.omega *= phase;
  }
  return out;
}

}  // namespace tweezercp
