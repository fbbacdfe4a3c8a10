// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tweezercp {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat2c = Eigen::Matrix2cd;

/// Pauli matrix sigma_{x,y,z} for axis 0, 1, 2.
const Mat2c& pauli(int axis);

/// A 2x2 unitary, stored row-major as a complex matrix.
///
/// Rotations follow the exp(-i a.sigma) convention everywhere in the
/// library: a vector a rotates the Bloch vector by 2|a| about a/|a|.
class Unitary2 {
 public:
  Unitary2() : m_(Mat2c::Identity()) {}
  explicit Unitary2(const Mat2c& m) : m_(m) {}

  static Unitary2 identity() { return Unitary2(); }

  const Mat2c& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  Unitary2 adjoint() const { return Unitary2(m_.adjoint()); }
  Complex trace() const { return m_.trace(); }
  Complex determinant() const { return m_.determinant(); }

  /// max_ij |(U^dag U - I)_ij|
  double unitarity_error() const;

  friend Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
    return Unitary2(a.m_ * b.m_);
  }

 private:
  Mat2c m_;
};

/// Axis-angle vector a with u = exp(-i a.sigma); |a| is half the rotation angle.
struct RotationVector {
  Vec3 a = Vec3::Zero();

  double rotation_angle() const { return 2.0 * a.norm(); }
};

/// Target gate exp(-i area/2 n(theta, phi).sigma).
struct TargetRotation {
  double area = 0.0;   // rad
  double theta = 0.0;  // polar angle of the axis, rad
  double phi = 0.0;    // azimuth of the axis, rad
};

/// Unit vector (sin th cos ph, sin th sin ph, cos th).
Vec3 axis_from_angles(double theta, double phi);

/// exp(-i a.sigma)
Unitary2 su2_exp(const Vec3& a);

Unitary2 su2_from_rotation(const TargetRotation& target);

/// Closed-form propagator of a rectangular pulse with complex Rabi frequency
/// omega (rad/s) and detuning delta (rad/s) held for dt seconds.
Unitary2 segment_propagator(Complex omega, double delta, double dt);

/// 1/4 |Tr(target^dag actual)|^2
double gate_fidelity(const Unitary2& target, const Unitary2& actual);

/// 1 - gate_fidelity, evaluated from the traceless part of target^dag actual
/// so that small infidelities keep full relative precision.
double gate_infidelity(const Unitary2& target, const Unitary2& actual);

/// Inverse of su2_exp up to a global phase. Throws BranchPoint when the
/// rotation angle is within 1e-6 of pi.
RotationVector su2_log_axis(const Unitary2& u);

/// sin(x)/x with a series branch near zero.
double sinc(double x);

}  // namespace tweezercp
