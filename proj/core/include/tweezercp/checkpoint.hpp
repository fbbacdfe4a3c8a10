// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <filesystem>
#include <string>

#include "tweezercp/trainer.hpp"

namespace tweezercp {

/// JSON text with sorted keys. Every floating-point value is written as a
/// hex-float string, so a save/load round trip is bit-exact.
std::string checkpoint_to_json(const Checkpoint& ckpt);
Checkpoint checkpoint_from_json(const std::string& text);

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Hash of the serialized checkpoint.
std::string checkpoint_hash(const Checkpoint& ckpt);

/// Exact text form of a double, and its inverse.
std::string hex_double(double x);
double parse_hex_double(const std::string& s);

}  // namespace tweezercp
