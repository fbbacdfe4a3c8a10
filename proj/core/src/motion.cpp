// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "tweezercp/motion.hpp"

#include <cmath>

#include <spdlog/spdlog.h>

#include "tweezercp/constants.hpp"

namespace tweezercp {

namespace {

double square(double x) { return x * x; }

}  // namespace

BeamGeometry BeamGeometry::gaussian(double radius, double wavelength) {
  BeamGeometry beam;
  beam.radius_x = radius;
  beam.radius_y = radius;
  beam.rayleigh_x = constants::kPi * radius * radius / wavelength;
  beam.rayleigh_y = beam.rayleigh_x;
  return beam;
}

double BeamGeometry::effective_rayleigh() const {
  return 1.0 / std::sqrt(0.5 * (1.0 / square(rayleigh_x) + 1.0 / square(rayleigh_y)));
}

double TrapParams::position_sigma(int axis) const {
  const double w = omega.at(static_cast<std::size_t>(axis));
  return std::sqrt(constants::kBoltzmann * temperature / mass) / w;
}

TrapParams derive_trap(const BeamGeometry& tweezer, double depth, double mass,
                       double temperature) {
  TrapParams trap;
  trap.depth = depth;
  trap.mass = mass;
  trap.temperature = temperature;
  trap.omega[0] = std::sqrt(4.0 * depth / (mass * square(tweezer.radius_x)));
  trap.omega[1] = std::sqrt(4.0 * depth / (mass * square(tweezer.radius_y)));
  trap.omega[2] = std::sqrt(2.0 * depth / (mass * square(tweezer.effective_rayleigh())));
  const double ratio = depth / (constants::kBoltzmann * temperature);
  if (temperature > 0.0 && ratio < 5.0) {
    spdlog::warn("trap depth is only {:.2f} kB T; harmonic model is doubtful", ratio);
  }
  spdlog::debug("derived trap: w_r/2pi = {:.1f} kHz, w_z/2pi = {:.1f} kHz",
                trap.omega[0] / constants::kTwoPi * 1e-3,
                trap.omega[2] / constants::kTwoPi * 1e-3);
  return trap;
}

std::vector<AtomSample> sample_thermal(const TrapParams& trap, std::mt19937_64& rng,
                                       std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<AtomSample> samples(n);
  for (auto& s : samples) {
    for (int axis = 0; axis < 3; ++axis) {
      const double sigma = trap.position_sigma(axis);
      const double x0 = sigma * normal(rng);
      const double v0_over_w = sigma * normal(rng);
      const auto i = static_cast<std::size_t>(axis);
      s.amplitude[i] = std::hypot(x0, v0_over_w);
      s.phase[i] = std::atan2(x0, v0_over_w);
    }
  }
  return samples;
}

Vec3 position(const AtomSample& sample, const TrapParams& trap, double t) {
  Vec3 p;
  for (std::size_t i = 0; i < 3; ++i) {
    p[static_cast<Eigen::Index>(i)] =
        sample.amplitude[i] * std::sin(trap.omega[i] * t + sample.phase[i]);
  }
  return p;
}

Vec3 velocity(const AtomSample& sample, const TrapParams& trap, double t) {
  Vec3 v;
  for (std::size_t i = 0; i < 3; ++i) {
    v[static_cast<Eigen::Index>(i)] = sample.amplitude[i] * trap.omega[i] *
                                      std::cos(trap.omega[i] * t + sample.phase[i]);
  }
  return v;
}

double intensity(const BeamGeometry& beam, const Vec3& point) {
  const Vec3 d = point - beam.center;
  const double fx = square(beam.rayleigh_x) / (square(d.z()) + square(beam.rayleigh_x));
  const double fy = square(beam.rayleigh_y) / (square(d.z()) + square(beam.rayleigh_y));
  const double exponent = -2.0 * (square(d.x()) * fx / square(beam.radius_x) +
                                  square(d.y()) * fy / square(beam.radius_y));
  return beam.peak_intensity * std::sqrt(fx * fy) * std::exp(exponent);
}

Vec3 log_intensity_gradient(const BeamGeometry& beam, const Vec3& point) {
  const Vec3 d = point - beam.center;
  const double zx2 = square(beam.rayleigh_x);
  const double zy2 = square(beam.rayleigh_y);
  const double fx = zx2 / (square(d.z()) + zx2);
  const double fy = zy2 / (square(d.z()) + zy2);
  const double rx2 = square(beam.radius_x);
  const double ry2 = square(beam.radius_y);
  Vec3 g;
  g.x() = -4.0 * d.x() * fx / rx2;
  g.y() = -4.0 * d.y() * fy / ry2;
  g.z() = -d.z() * (fx / zx2 + fy / zy2) +
          4.0 * d.z() * (square(d.x()) * fx * fx / (rx2 * zx2) +
                         square(d.y()) * fy * fy / (ry2 * zy2));
  return g;
}

double MotionContext::epsilon(const AtomSample& sample, double t) const {
  return intensity(control, position(sample, trap, t)) / nominal_intensity - 1.0;
}

double MotionContext::epsilon_rate(const AtomSample& sample, double t) const {
  const Vec3 x = position(sample, trap, t);
  const double ratio = intensity(control, x) / nominal_intensity;
  return ratio * log_intensity_gradient(control, x).dot(velocity(sample, trap, t));
}

MotionContext MotionContext::reference() {
  MotionContext ctx;
  ctx.trap.depth = constants::kBoltzmann * 0.8e-3;
  ctx.trap.omega = {constants::kTwoPi * 155e3, constants::kTwoPi * 155e3,
                    constants::kTwoPi * 42e3};
  ctx.trap.mass = constants::kRb87Mass;
  ctx.trap.temperature = 30e-6;
  ctx.control = BeamGeometry::gaussian(1e-6, 795e-9);
  return ctx;
}

std::vector<double> epsilon_series(const AtomSample& sample, const TrapParams& trap,
                                   const BeamGeometry& control,
                                   const std::vector<double>& times) {
  const MotionContext ctx{trap, control, control.peak_intensity};
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    out.push_back(ctx.epsilon(sample, t));
  }
  return out;
}

BeamGeometry apply_inhomogeneity(const BeamGeometry& beam, const InhomogeneityModel& inh) {
  BeamGeometry out = beam;
  out.peak_intensity *= 1.0 + inh.intensity;
  out.radius_x *= 1.0 + inh.radius_x;
  out.radius_y *= 1.0 + inh.radius_y;
  out.rayleigh_x *= square(1.0 + inh.radius_x);
  out.rayleigh_y *= square(1.0 + inh.radius_y);
  return out;
}

TrapParams rescale_trap(const TrapParams& trap, const InhomogeneityModel& inh) {
  TrapParams out = trap;
  const double depth_scale = 1.0 + inh.intensity;
  const double sx = 1.0 + inh.radius_x;
  const double sy = 1.0 + inh.radius_y;
  out.depth *= depth_scale;
  out.omega[0] *= std::sqrt(depth_scale) / sx;
  out.omega[1] *= std::sqrt(depth_scale) / sy;
  // 1/z0^2 averages the two Rayleigh ranges, each scaling as R^2.
  const double axial = std::sqrt(0.5 * (std::pow(sx, -4.0) + std::pow(sy, -4.0)));
  out.omega[2] *= std::sqrt(depth_scale) * axial;
  return out;
}

InhomogeneityModel sample_inhomogeneity(double sigma_intensity, double sigma_radius_x,
                                        double sigma_radius_y, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  InhomogeneityModel inh;
  inh.intensity = sigma_intensity * normal(rng);
  inh.radius_x = sigma_radius_x * normal(rng);
  inh.radius_y = sigma_radius_y * normal(rng);
  return inh;
}

}  // namespace tweezercp
