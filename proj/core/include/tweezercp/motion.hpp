// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <array>
#include <random>
#include <vector>

#include "tweezercp/su2.hpp"

namespace tweezercp {

/// Elliptical Gaussian beam. Lengths in metres; I0 only matters in ratios.
struct BeamGeometry {
  double radius_x = 1e-6;    // 1/e^2 intensity radius
  double radius_y = 1e-6;
  double rayleigh_x = 1e-6;
  double rayleigh_y = 1e-6;
  double peak_intensity = 1.0;
  Vec3 center = Vec3::Zero();

  /// Round, diffraction-limited beam: z_R = pi R^2 / lambda.
  static BeamGeometry gaussian(double radius, double wavelength);

  /// 1/z0^2 = (1/z_x^2 + 1/z_y^2) / 2
  double effective_rayleigh() const;
};

struct TrapParams {
  double depth = 0.0;                          // J
  std::array<double, 3> omega{0.0, 0.0, 0.0};  // rad/s
  double mass = 0.0;                           // kg
  double temperature = 0.0;                    // K

  /// Thermal position spread sqrt(kB T / m w_i^2) along axis i.
  double position_sigma(int axis) const;
};

/// One classical thermal trajectory: x_i(t) = X_i sin(w_i t + Phi_i).
struct AtomSample {
  std::array<double, 3> amplitude{0.0, 0.0, 0.0};
  std::array<double, 3> phase{0.0, 0.0, 0.0};
};

/// Fractional deviations of a beam's peak intensity and radii.
struct InhomogeneityModel {
  double intensity = 0.0;
  double radius_x = 0.0;
  double radius_y = 0.0;
};

TrapParams derive_trap(const BeamGeometry& tweezer, double depth, double mass,
                       double temperature);

std::vector<AtomSample> sample_thermal(const TrapParams& trap, std::mt19937_64& rng,
                                       std::size_t n);

Vec3 position(const AtomSample& sample, const TrapParams& trap, double t);
Vec3 velocity(const AtomSample& sample, const TrapParams& trap, double t);

/// Exact elliptical Gaussian intensity at a point, relative to the beam center.
double intensity(const BeamGeometry& beam, const Vec3& point);

/// Gradient of log I at a point.
Vec3 log_intensity_gradient(const BeamGeometry& beam, const Vec3& point);

/// Atom motion in the trap seen through the control beam.
struct MotionContext {
  TrapParams trap;
  BeamGeometry control;
  /// Intensity the nominal Rabi frequency is calibrated to. Stays fixed when
  /// the control beam itself is perturbed.
  double nominal_intensity = 1.0;

  /// eps(t) = I(x(t)) / I_nominal - 1
  double epsilon(const AtomSample& sample, double t) const;
  /// d eps / dt
  double epsilon_rate(const AtomSample& sample, double t) const;

  /// Default rubidium-87 trap and 1 um, 795 nm control beam.
  static MotionContext reference();
};

std::vector<double> epsilon_series(const AtomSample& sample, const TrapParams& trap,
                                   const BeamGeometry& control,
                                   const std::vector<double>& times);

/// I0 (1 + dI), R (1 + dR), Rayleigh ranges as R^2.
BeamGeometry apply_inhomogeneity(const BeamGeometry& beam, const InhomogeneityModel& inh);

/// Trap frequencies of a tweezer with the given deviations at fixed peak
/// intensity per unit depth: depth scales as (1 + dI), radial frequencies as
/// sqrt(1 + dI) / (1 + dR), the axial one through the rescaled Rayleigh ranges.
TrapParams rescale_trap(const TrapParams& trap, const InhomogeneityModel& inh);

InhomogeneityModel sample_inhomogeneity(double sigma_intensity, double sigma_radius_x,
                                        double sigma_radius_y, std::mt19937_64& rng);

}  // namespace tweezercp
