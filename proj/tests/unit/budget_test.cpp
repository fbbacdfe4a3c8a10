// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include <gtest/gtest.h>

#include <tweezercp/budget.hpp>
#include <tweezercp/constants.hpp>
#include <tweezercp/evolve.hpp>

namespace tweezercp {
namespace {

using constants::kPi;
using constants::kTwoPi;
using State = std::array<std::complex<double>, 4>;

// Four levels: |0>, |1> driven resonantly at W; |2>, |3> reached by the
// parasitic polarization with xi W and shifted by +-mu B. Units of W = 1.
double max_leakage(double xi, double zeeman_over_w) {
  const std::complex<double> mi{0.0, -1.0};
  const auto rhs = [&](const State& s) {
    State d;
    d[0] = mi * (0.5 * s[1] + 0.5 * xi * (s[2] + s[3]));
    d[1] = mi * (0.5 * s[0]);
    d[2] = mi * (0.5 * xi * s[0] + zeeman_over_w * s[2]);
    d[3] = mi * (0.5 * xi * s[0] - zeeman_over_w * s[3]);
    return d;
  };
  const auto axpy = [](const State& a, double h, const State& b) {
    State out;
    for (int i = 0; i < 4; ++i) out[i] = a[i] + h * b[i];
    return out;
  };
  State s{1.0, 0.0, 0.0, 0.0};
  const int n = 200000;
  const double h = kPi / n;
  double best = 0.0;
  for (int k = 0; k < n; ++k) {
    const State k1 = rhs(s);
    const State k2 = rhs(axpy(s, h / 2, k1));
    const State k3 = rhs(axpy(s, h / 2, k2));
    const State k4 = rhs(axpy(s, h, k3));
    for (int i = 0; i < 4; ++i) {
      s[i] += h / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    best = std::max(best, std::norm(s[2]) + std::norm(s[3]));
  }
  return best;
}

TEST(Budget, ScatteringForResonantPi) {
  const BudgetInputs in = BudgetInputs::reference();
  const double s = scattering_budget(in.gamma, in.omega_c, in.raman_detuning, kPi / in.omega_c);
  EXPECT_NEAR(s, 9.03e-5, 0.01e-5);
  EXPECT_NEAR(s, 5.75e6 * kPi / (2 * 100e9), 1e-18);
}

TEST(Budget, DetuningClosedForm) {
  EXPECT_NEAR(detuning_budget(0.01, kPi), 1e-4, 1e-18);
  EXPECT_NEAR(detuning_budget(0.01, kPi / 2), 0.5e-4, 1e-18);
  EXPECT_EQ(detuning_budget(0.0, kPi), 0.0);
}

TEST(Budget, PolarizationForms) {
  const double w = kTwoPi * 1e6;
  const PolarizationBudget p = polarization_budget(0.016, 10.0, w, 0.7);
  EXPECT_NEAR(p.approximate, 2 * std::pow(0.032 / 15.0, 2), 1e-15);
  EXPECT_FALSE(p.valid);
  EXPECT_NEAR(p.exact / p.approximate, 1.0, 0.01);
  EXPECT_TRUE(polarization_budget(0.016, 30.0, w, 0.7).valid);
}

class PolarizationOracle : public ::testing::TestWithParam<std::array<double, 2>> {};

TEST_P(PolarizationOracle, FourLevelLeakage) {
  const auto [xi, field] = GetParam();
  const double w = kTwoPi * 1e6;
  const double zeeman = kTwoPi * 0.7e6 * field;
  const PolarizationBudget p = polarization_budget(xi, field, w, 0.7);
  const double leak = max_leakage(xi, zeeman / w);
  EXPECT_GT(leak / p.exact, 0.3) << leak;
  EXPECT_LT(leak / p.exact, 3.0) << leak;
  EXPECT_GT(leak / p.approximate, 0.3);
  EXPECT_LT(leak / p.approximate, 3.0);
}

INSTANTIATE_TEST_SUITE_P(Points, PolarizationOracle,
                         ::testing::Values(std::array<double, 2>{0.016, 10.0},
                                           std::array<double, 2>{0.05, 20.0},
                                           std::array<double, 2>{0.01, 50.0}));

TEST(Budget, LightShiftStillAtom) {
  LightShiftModel m;
  m.offset = kTwoPi * 5e3;
  m.radial = 1e20;
  const TrapParams trap = MotionContext::reference().trap;
  const auto e = light_shift_detuning(m, {AtomSample{}}, trap, kTwoPi * 1e6, 0.5e-6);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_NEAR(e[0], 5e-3, 1e-15);
  EXPECT_NEAR(light_shift_budget(m, {AtomSample{}}, trap, kTwoPi * 1e6, kPi), 25e-6, 1e-15);
}

TEST(Budget, LightShiftQuadraticMean) {
  // <x^2 + y^2> = 2 sigma_r^2 over the ensemble.
  LightShiftModel m;
  m.radial = 1.0;
  const TrapParams trap = MotionContext::reference().trap;
  std::mt19937_64 rng(6);
  const auto atoms = sample_thermal(trap, rng, 40000);
  double sum = 0.0;
  for (double e : light_shift_detuning(m, atoms, trap, 1.0, 1e-9)) {
    sum += e;
  }
  const double s = trap.position_sigma(0);
  EXPECT_NEAR(sum / atoms.size() / (2 * s * s), 1.0, 0.02);
}

TEST(Budget, MotionTracksEnsembleInfidelity) {
  const MotionContext motion = MotionContext::reference();
  std::mt19937_64 rng(10);
  const auto atoms = sample_thermal(motion.trap, rng, 3000);
  const double w = kTwoPi * 1e6;
  const double b = motion_amplitude_budget(atoms, motion, kPi, w);
  const HardwareLimits lim = HardwareLimits::reference();
  const double f = ensemble_fidelity(rect(kPi, 0.0, lim), su2_from_rotation({kPi, kPi / 2, 0.0}),
                                     atoms, motion, 100)
                       .infidelity();
  EXPECT_NEAR(b / f, 1.0, 0.05);
}

TEST(Budget, ReferenceHierarchy) {
  const MotionContext motion = MotionContext::reference();
  std::mt19937_64 rng(1);
  const auto rows = error_budget(BudgetInputs::reference(), sample_thermal(motion.trap, rng, 5000),
                                 motion);
  ASSERT_EQ(rows.size(), 4u);
  const char* names[] = {"motion", "scattering", "polarization", "light_shift"};
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(rows[k].channel, names[k]);
    EXPECT_EQ(std::lround(std::log10(rows[k].value)), -3 - k) << rows[k].channel;
  }
}

}  // namespace
}  // namespace tweezercp
