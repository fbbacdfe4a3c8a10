// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cli/config.hpp"

namespace tweezercp::cli {

/// RNG stream for evaluation atoms; 0-3 belong to training.
inline constexpr std::uint64_t kEvalStream = 4;

/// checkpoint.json, training_curve.csv
void run_train(const ExperimentConfig& cfg, const std::filesystem::path& out);

/// evaluation.json with rect, SK1, BB1 and (with a checkpoint) trained rows.
void run_evaluate(const ExperimentConfig& cfg, const std::filesystem::path& out,
                  const std::optional<std::filesystem::path>& checkpoint);

struct SweepSpec {
  std::string axis;
  double from = 0.0;
  double to = 0.0;
  int steps = 1;
};

/// Throws ConfigError on an unknown axis.
void validate_sweep(const SweepSpec& spec);

/// sweep.csv
void run_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out,
               const SweepSpec& spec, const std::optional<std::filesystem::path>& checkpoint);

/// spectrum.csv, residual_bias.csv, spectrum_summary.json. family is rect,
/// sk1, bb1 or trained.
void run_spectrum(const ExperimentConfig& cfg, const std::filesystem::path& out,
                  const std::string& family,
                  const std::optional<std::filesystem::path>& checkpoint);

/// budget.csv, budget.json
void run_budget(const ExperimentConfig& cfg, const std::filesystem::path& out);

/// pulses.csv
void run_compile(const ExperimentConfig& cfg, const std::filesystem::path& out,
                 const std::string& family,
                 const std::optional<std::filesystem::path>& checkpoint);

}  // namespace tweezercp::cli
