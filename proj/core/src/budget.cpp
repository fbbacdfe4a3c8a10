// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "tweezercp/budget.hpp"

#include <cmath>

#include <spdlog/spdlog.h>

#include "tweezercp/constants.hpp"

namespace tweezercp {

using constants::kPi;
using constants::kTwoPi;

namespace {

constexpr int kQuadrature = 64;

// Midpoint mean of f over [0, duration].
template <typename F>
double time_mean(F f, double duration) {
  double sum = 0.0;
  for (int j = 0; j < kQuadrature; ++j) {
    sum += f(duration * (j + 0.5) / kQuadrature);
  }
  return sum / kQuadrature;
}

}  // namespace

double LightShiftModel::at(const Vec3& p) const {
  return offset + radial * (p.x() * p.x() + p.y() * p.y()) + axial * p.z() * p.z();
}

BudgetInputs BudgetInputs::reference() {
  BudgetInputs in;
  in.omega_c = kTwoPi * 1e6;
  in.area = kPi;
  in.xi = 0.016;
  in.field_gauss = 10.0;
  in.mu_mhz_per_gauss = 0.7;
  in.gamma = kTwoPi * 5.75e6;
  in.raman_detuning = kTwoPi * 100e9;
  in.light_shift.radial = kTwoPi * 160e3 / 1e-12;
  in.light_shift.axial = kTwoPi * 4e3 / 1e-12;
  return in;
}

double motion_amplitude_budget(const std::vector<AtomSample>& samples,
                               const MotionContext& motion, double area, double omega_c) {
  if (samples.empty()) {
    return 0.0;
  }
  const double duration = area / omega_c;
  double sum = 0.0;
  for (const auto& s : samples) {
    const double mean = time_mean([&](double t) { return motion.epsilon(s, t); }, duration);
    sum += mean * mean;
  }
  return 0.25 * area * area * sum / static_cast<double>(samples.size());
}

double detuning_budget(double eps_d, double area) {
  const double x = eps_d * std::sin(0.5 * area);
  return x * x;
}

PolarizationBudget polarization_budget(double xi, double field_gauss, double omega_c,
                                       double mu_mhz_per_gauss) {
  const double zeeman = kTwoPi * mu_mhz_per_gauss * 1e6 * field_gauss;
  PolarizationBudget out;
  const double a = 2.0 * xi / (1.0 + 2.0 * zeeman / omega_c);
  out.approximate = 2.0 * a * a;
  const double coupling = xi * omega_c;
  for (double sign : {1.0, -1.0}) {
    const double detuning = sign * ((1.0 - xi * xi) * 0.5 * omega_c + zeeman);
    out.exact += coupling * coupling / (coupling * coupling + detuning * detuning);
  }
  out.valid = xi < 0.1 && zeeman / omega_c > 10.0;
  if (!out.valid) {
    spdlog::warn("polarization budget outside its validity window (xi = {}, mu B / W = {:.3g})",
                 xi, zeeman / omega_c);
  }
  return out;
}

double scattering_budget(double gamma, double omega_c, double raman_detuning, double duration) {
  return gamma * omega_c * duration / (2.0 * raman_detuning);
}

std::vector<double> light_shift_detuning(const LightShiftModel& model,
                                         const std::vector<AtomSample>& samples,
                                         const TrapParams& trap, double omega_c,
                                         double duration) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    out.push_back(
        time_mean([&](double t) { return model.at(position(s, trap, t)); }, duration) / omega_c);
  }
  return out;
}

double light_shift_budget(const LightShiftModel& model, const std::vector<AtomSample>& samples,
                          const TrapParams& trap, double omega_c, double area) {
  if (samples.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (double e : light_shift_detuning(model, samples, trap, omega_c, area / omega_c)) {
    sum += detuning_budget(e, area);
  }
  return sum / static_cast<double>(samples.size());
}

std::vector<BudgetRow> error_budget(const BudgetInputs& in, const std::vector<AtomSample>& samples,
                                    const MotionContext& motion) {
  const double duration = in.area / in.omega_c;
  std::vector<BudgetRow> rows;
  const double m = motion_amplitude_budget(samples, motion, in.area, in.omega_c);
  rows.push_back({"motion", m, m, true});
  const double s = scattering_budget(in.gamma, in.omega_c, in.raman_detuning, duration);
  rows.push_back({"scattering", s, s, in.raman_detuning > 100.0 * in.omega_c});
  const PolarizationBudget p =
      polarization_budget(in.xi, in.field_gauss, in.omega_c, in.mu_mhz_per_gauss);
  rows.push_back({"polarization", p.approximate, p.exact, p.valid});
  const double l = light_shift_budget(in.light_shift, samples, motion.trap, in.omega_c, in.area);
  rows.push_back({"light_shift", l, l, true});
  return rows;
}

}  // namespace tweezercp
