// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include "tweezercp/su2.hpp"

namespace tweezercp::detail {

// (w, v) stands for w I - i v.sigma.
struct Quat {
  double w = 1.0;
  Vec3 v = Vec3::Zero();

  Quat conj() const { return {w, -v}; }
  double dot(const Quat& o) const { return w * o.w + v.dot(o.v); }
};

inline Quat operator*(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.v.dot(b.v), a.w * b.v + b.w * a.v + a.v.cross(b.v)};
}

inline Quat scaled(const Quat& q, double s) { return {s * q.w, s * q.v}; }

}  // namespace tweezercp::detail
