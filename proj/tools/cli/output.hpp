// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace tweezercp::cli {

struct Provenance {
  std::string config_hash;
  std::uint64_t seed = 0;
};

const char* tool_version();

/// Shortest text that reads back to the same double.
std::string num(double x);

/// Collects rows and writes a CSV whose first line names the tool version,
/// schema, config hash and seed.
class CsvWriter {
 public:
  CsvWriter(std::string schema, std::vector<std::string> columns, Provenance prov);

  void row(const std::vector<std::string>& cells);
  std::string str() const;
  void save(const std::filesystem::path& path) const;

 private:
  std::string schema_;
  std::size_t width_;
  Provenance prov_;
  std::string body_;
};

/// Adds tool_version, config_hash and seed to a JSON report.
nlohmann::ordered_json stamped(const std::string& schema, const Provenance& prov);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace tweezercp::cli
