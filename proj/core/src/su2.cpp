// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "tweezercp/su2.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "tweezercp/errors.hpp"

namespace tweezercp {

namespace {

constexpr Complex kI{0.0, 1.0};

// Quaternion components (q0, q) of an SU(2) matrix q0 I - i q.sigma.
struct Su2Parts {
  double q0;
  Vec3 q;
};

Su2Parts su2_parts(const Mat2c& v) {
  Su2Parts p;
  p.q0 = 0.5 * (v(0, 0) + v(1, 1)).real();
  p.q.x() = -0.5 * (v(0, 1) + v(1, 0)).imag();
  p.q.y() = 0.5 * (v(1, 0) - v(0, 1)).real();
  p.q.z() = 0.5 * (v(1, 1) - v(0, 0)).imag();
  return p;
}

}  // namespace

const Mat2c& pauli(int axis) {
  static const std::array<Mat2c, 3> kPauli = [] {
    std::array<Mat2c, 3> s;
    s[0] << 0.0, 1.0, 1.0, 0.0;
    s[1] << 0.0, -kI, kI, 0.0;
    s[2] << 1.0, 0.0, 0.0, -1.0;
    return s;
  }();
  return kPauli.at(static_cast<std::size_t>(axis));
}

double Unitary2::unitarity_error() const {
  const Mat2c d = m_.adjoint() * m_ - Mat2c::Identity();
  return d.cwiseAbs().maxCoeff();
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

Vec3 axis_from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

Unitary2 su2_exp(const Vec3& a) {
  const double angle = a.norm();
  const double c = std::cos(angle);
  const double s = sinc(angle);
  Mat2c m;
  m << Complex(c, -s * a.z()), Complex(-s * a.y(), -s * a.x()),
      Complex(s * a.y(), -s * a.x()), Complex(c, s * a.z());
  return Unitary2(m);
}

Unitary2 su2_from_rotation(const TargetRotation& target) {
  return su2_exp(0.5 * target.area * axis_from_angles(target.theta, target.phi));
}

Unitary2 segment_propagator(Complex omega, double delta, double dt) {
  // exp(-i dt/2 (Re W sx + Im W sy + D sz)); the sinc branch covers W = D = 0.
  const Vec3 half_area = 0.5 * dt * Vec3(omega.real(), omega.imag(), delta);
  return su2_exp(half_area);
}

double gate_fidelity(const Unitary2& target, const Unitary2& actual) {
  const Complex tr = (target.matrix().adjoint() * actual.matrix()).trace();
  return 0.25 * std::norm(tr);
}

double gate_infidelity(const Unitary2& target, const Unitary2& actual) {
  const Mat2c w = target.matrix().adjoint() * actual.matrix();
  double sum = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    sum += std::norm((pauli(axis) * w).trace());
  }
  return 0.25 * sum;
}

RotationVector su2_log_axis(const Unitary2& u) {
  const Complex root_det = std::sqrt(u.determinant());
  Su2Parts p = su2_parts(u.matrix() / root_det);
  if (p.q0 < 0.0) {
    p.q0 = -p.q0;
    p.q = -p.q;
  }
  const double qn = p.q.norm();
  const double half_angle = std::atan2(qn, p.q0);
  if (std::numbers::pi - 2.0 * half_angle < 1e-6) {
    throw BranchPoint("su2_log_axis: rotation angle within 1e-6 of pi");
  }
  RotationVector r;
  if (qn > 0.0) {
    r.a = p.q * (half_angle / qn);
  }
  return r;
}

}  // namespace tweezercp
