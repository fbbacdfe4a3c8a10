// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "tweezercp/hash.hpp"

#include <array>
#include <charconv>

namespace tweezercp {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::string_view data) {
  std::array<char, 16> buf{};
  buf.fill('0');
  const std::uint64_t h = fnv1a64(data);
  std::array<char, 16> tmp{};
  const auto res = std::to_chars(tmp.data(), tmp.data() + tmp.size(), h, 16);
  const auto len = static_cast<std::size_t>(res.ptr - tmp.data());
  std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(len),
            buf.end() - static_cast<std::ptrdiff_t>(len));
  return std::string(buf.data(), buf.size());
}

}  // namespace tweezercp
