// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <string>
#include <vector>

#include "tweezercp/motion.hpp"

namespace tweezercp {

/// Differential light shift as a quadratic function of the atom position
/// relative to the trap center, in rad/s.
struct LightShiftModel {
  double offset = 0.0;  // rad/s
  double radial = 0.0;  // rad/s per m^2 of x^2 + y^2
  double axial = 0.0;   // rad/s per m^2 of z^2

  double at(const Vec3& p) const;
};

struct BudgetInputs {
  double omega_c = 0.0;          // rad/s
  double area = 0.0;             // rad
  double xi = 0.0;               // pi / sigma+ amplitude ratio
  double field_gauss = 0.0;      // G
  double mu_mhz_per_gauss = 0.7;
  double gamma = 0.0;            // excited-state decay rate, rad/s
  double raman_detuning = 0.0;   // rad/s
  LightShiftModel light_shift;

  /// Rubidium-87 D1 Raman defaults for a resonant pi pulse at 2pi x 1 MHz.
  static BudgetInputs reference();
};

/// 1/4 A^2 <eps_bar^2>, eps_bar the per-atom mean of eps over the pulse.
double motion_amplitude_budget(const std::vector<AtomSample>& samples,
                               const MotionContext& motion, double area, double omega_c);

/// (eps_d sin(A/2))^2
double detuning_budget(double eps_d, double area);

struct PolarizationBudget {
  double approximate = 0.0;  // 2 |2 xi / (1 + 2 mu B / W)|^2
  double exact = 0.0;        // sum of the two-level maxima
  bool valid = true;         // xi < 0.1 and mu B / W > 10
};

PolarizationBudget polarization_budget(double xi, double field_gauss, double omega_c,
                                       double mu_mhz_per_gauss);

/// Gamma W T / (2 Delta_gamma)
double scattering_budget(double gamma, double omega_c, double raman_detuning, double duration);

/// Per-atom eps_d = <Delta_LS(x(t))> / W averaged over the pulse.
std::vector<double> light_shift_detuning(const LightShiftModel& model,
                                         const std::vector<AtomSample>& samples,
                                         const TrapParams& trap, double omega_c, double duration);

/// Ensemble mean of detuning_budget over light_shift_detuning.
double light_shift_budget(const LightShiftModel& model, const std::vector<AtomSample>& samples,
                          const TrapParams& trap, double omega_c, double area);

struct BudgetRow {
  std::string channel;
  double value = 0.0;
  double alternative = 0.0;  // exact form where one exists, else equal to value
  bool valid = true;
};

/// Motion, scattering, polarization and light-shift rows, in that order.
std::vector<BudgetRow> error_budget(const BudgetInputs& in, const std::vector<AtomSample>& samples,
                                    const MotionContext& motion);

}  // namespace tweezercp
