// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <numbers>

namespace tweezercp::constants {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kBoltzmann = 1.380649e-23;      // J/K
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kRb87Mass = 86.909180527 * kAtomicMassUnit;

}  // namespace tweezercp::constants
