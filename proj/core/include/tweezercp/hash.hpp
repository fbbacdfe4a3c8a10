// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace tweezercp {

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);

/// fnv1a64 as 16 lowercase hex digits.
std::string hash_hex(std::string_view data);

}  // namespace tweezercp
