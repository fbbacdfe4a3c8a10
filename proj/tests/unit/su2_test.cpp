// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <tweezercp/constants.hpp>
#include <tweezercp/errors.hpp>
#include <tweezercp/su2.hpp>

#include "oracles.hpp"

namespace tweezercp {
namespace {

using constants::kPi;
const Complex kI{0.0, 1.0};

Mat2c dot_sigma(const Vec3& a) {
  return a.x() * pauli(0) + a.y() * pauli(1) + a.z() * pauli(2);
}

double max_diff(const Mat2c& a, const Mat2c& b) { return (a - b).cwiseAbs().maxCoeff(); }

TEST(Su2, ExpMatchesSeries) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.5);
  for (int k = 0; k < 50; ++k) {
    const Vec3 a(n(rng), n(rng), n(rng));
    const Mat2c want = testing::series_expm(-kI * dot_sigma(a));
    EXPECT_LT(max_diff(su2_exp(a).matrix(), want), 1e-12);
  }
}

TEST(Su2, ExpOfZeroIsIdentity) {
  EXPECT_LT(max_diff(su2_exp(Vec3::Zero()).matrix(), Mat2c::Identity()), 1e-15);
}

TEST(Su2, TargetPiAboutX) {
  const Unitary2 u = su2_from_rotation({kPi, kPi / 2, 0.0});
  EXPECT_NEAR(std::abs(u(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR((u(0, 1) - (-kI)).real(), 0.0, 1e-15);
  EXPECT_NEAR((u(0, 1) - (-kI)).imag(), 0.0, 1e-15);
}

TEST(Su2, UnitaryAndSpecial) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 20; ++k) {
    const Unitary2 g = segment_propagator({u(rng) * 1e6, u(rng) * 1e6}, u(rng) * 1e6, 1e-6);
    EXPECT_LT(g.unitarity_error(), 1e-14);
    EXPECT_NEAR(std::abs(g.determinant() - 1.0), 0.0, 1e-14);
  }
}

TEST(Su2, ResonantRabiPopulation) {
  const double w = 2 * kPi * 1e6;
  for (double t : {0.1e-6, 0.25e-6, 0.5e-6, 0.8e-6}) {
    const Unitary2 g = segment_propagator({w, 0.0}, 0.0, t);
    EXPECT_NEAR(std::norm(g(1, 0)), std::pow(std::sin(w * t / 2), 2), 1e-14);
  }
}

TEST(Su2, DetunedRabiPopulation) {
  const double w = 2 * kPi * 1e6;
  const double d = 2 * kPi * 0.7e6;
  const double g = std::hypot(w, d);
  for (double t : {0.2e-6, 0.6e-6, 1.3e-6}) {
    const Unitary2 u = segment_propagator({w, 0.0}, d, t);
    EXPECT_NEAR(std::norm(u(1, 0)), w * w / (g * g) * std::pow(std::sin(g * t / 2), 2), 1e-14);
  }
}

TEST(Su2, PropagatorPhaseSetsAxis) {
  // Omega = |W| e^{i phi} drives about (cos phi, sin phi, 0).
  const double w = 2 * kPi * 1e6;
  const double phi = 0.7;
  const double t = 0.3e-6;
  const Unitary2 g = segment_propagator(std::polar(w, phi), 0.0, t);
  const Vec3 a = 0.5 * w * t * Vec3(std::cos(phi), std::sin(phi), 0.0);
  EXPECT_LT(max_diff(g.matrix(), su2_exp(a).matrix()), 1e-14);
}

TEST(Su2, FidelityIgnoresGlobalPhase) {
  const Unitary2 u = su2_exp(Vec3(0.3, -0.2, 0.9));
  const Unitary2 v(std::exp(kI * 1.234) * u.matrix());
  EXPECT_NEAR(gate_fidelity(u, v), 1.0, 1e-15);
  EXPECT_NEAR(gate_infidelity(u, v), 0.0, 1e-15);
}

TEST(Su2, InfidelitySmallAngle) {
  const Unitary2 u = su2_exp(Vec3(0.4, 0.1, -0.3));
  for (double e : {1e-3, 1e-5, 1e-7}) {
    const Unitary2 v = u * su2_exp(Vec3(e, 0.0, 0.0));
    EXPECT_NEAR(gate_infidelity(u, v) / (e * e), 1.0, 1e-6);
    EXPECT_NEAR(gate_infidelity(u, v), 1.0 - gate_fidelity(u, v), 1e-15);
  }
}

TEST(Su2, LogRoundTrip) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 0.6);
  for (int k = 0; k < 100; ++k) {
    Vec3 a(n(rng), n(rng), n(rng));
    if (a.norm() > 1.5) {
      a *= 1.5 / a.norm();
    }
    const RotationVector r = su2_log_axis(su2_exp(a));
    EXPECT_LT((r.a - a).norm(), 1e-12);
  }
}

TEST(Su2, LogIgnoresGlobalPhase) {
  const Vec3 a(0.2, 0.5, -0.1);
  const Unitary2 u(-su2_exp(a).matrix());
  EXPECT_LT((su2_log_axis(u).a - a).norm(), 1e-12);
}

TEST(Su2, LogThrowsNearPi) {
  EXPECT_THROW(su2_log_axis(su2_exp(Vec3(kPi / 2, 0.0, 0.0))), BranchPoint);
}

TEST(Su2, Sinc) {
  EXPECT_DOUBLE_EQ(sinc(0.0), 1.0);
  for (double x : {1e-8, 1e-5, 1e-3, 0.5, 3.0}) {
    EXPECT_NEAR(sinc(x), std::sin(x) / x, 1e-15);
  }
}

}  // namespace
}  // namespace tweezercp
