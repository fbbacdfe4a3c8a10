// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "cli/output.hpp"

#include <fstream>

#include <fmt/format.h>

#include <tweezercp/errors.hpp>

namespace tweezercp::cli {

const char* tool_version() { return TWEEZERCP_VERSION; }

std::string num(double x) { return fmt::format("{}", x); }

CsvWriter::CsvWriter(std::string schema, std::vector<std::string> columns, Provenance prov)
    : schema_(std::move(schema)), width_(columns.size()), prov_(std::move(prov)) {
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) {
    throw Error(fmt::format("{}: row has {} cells, expected {}", schema_, cells.size(), width_));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    body_ += cells[i];
    body_ += i + 1 == cells.size() ? '\n' : ',';
  }
}

std::string CsvWriter::str() const {
  return fmt::format("# tweezercp {} | schema {}/1 | config {} | seed {}\n", tool_version(),
                     schema_, prov_.config_hash, prov_.seed) +
         body_;
}

void CsvWriter::save(const std::filesystem::path& path) const { write_text(path, str()); }

nlohmann::ordered_json stamped(const std::string& schema, const Provenance& prov) {
  nlohmann::ordered_json j;
  j["tool_version"] = tool_version();
  j["schema"] = schema + "/1";
  j["config_hash"] = prov.config_hash;
  j["seed"] = prov.seed;
  return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  write_text(path, j.dump(2) + "\n");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw FormatError("cannot write " + path.string());
  }
  out << text;
}

}  // namespace tweezercp::cli
