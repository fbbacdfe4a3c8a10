// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <stdexcept>
#include <string>

namespace tweezercp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two pulse times snap to the same uniform segment boundary.
class AmbiguousMapping : public Error {
 public:
  using Error::Error;
};

/// A segment grid does not span the composite pulse it is applied to.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// Rotation angle too close to pi for a well-defined axis.
class BranchPoint : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// A rotated pulse axis cannot be realised within the hardware limits.
class Unencodable : public Error {
 public:
  using Error::Error;
};

/// Training produced a non-finite loss.
class Diverged : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace tweezercp
