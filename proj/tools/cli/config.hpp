// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <tweezercp/budget.hpp>
#include <tweezercp/motion.hpp>
#include <tweezercp/pulses.hpp>
#include <tweezercp/su2.hpp>
#include <tweezercp/trainer.hpp>

namespace tweezercp::cli {

/// Everything a run needs. Key names in the INI file carry their units.
struct ExperimentConfig {
  // [run]
  std::uint64_t seed = 1;
  std::string preset = "desk";
  int train_segments = 20;
  int report_segments = 100;
  int eval_atoms = 10000;

  // [trap]
  double trap_depth_mK = 0.8;
  double omega_r_2pi_kHz = 155.0;
  double omega_z_2pi_kHz = 42.0;
  double temperature_uK = 30.0;
  double mass_amu = 86.909180527;
  bool derive_frequencies = false;
  double tweezer_radius_um = 0.7;
  double tweezer_wavelength_nm = 852.0;

  // [control]
  double control_radius_um = 1.0;
  double control_wavelength_nm = 795.0;
  double misalign_r_nm = 0.0;
  double misalign_z_nm = 0.0;

  // [limits]
  double omega_max_2pi_MHz = 1.0;
  double delta_max_2pi_MHz = 1.0;
  double chi_min = 0.1;
  double chi_max = 1.0;

  // [target]
  double target_area_rad = 3.141592653589793;
  double target_theta_rad = 1.5707963267948966;
  double target_phi_rad = 0.0;

  // [train]; defaults come from the preset
  TrainConfig train = TrainConfig::desk();
  std::string train_baseline = "sk1";

  // [budget]
  double xi = 0.016;
  double field_G = 10.0;
  double mu_MHz_per_G = 0.7;
  double gamma_2pi_MHz = 5.75;
  double raman_detuning_2pi_GHz = 100.0;
  double light_shift_offset_2pi_kHz = 0.0;
  double light_shift_radial_2pi_kHz_per_um2 = 160.0;
  double light_shift_axial_2pi_kHz_per_um2 = 4.0;
  int budget_atoms = 10000;

  // [spectrum]
  double spectrum_window_us = 400.0;
  double spectrum_dt_ns = 100.0;
  int spectrum_atoms = 2000;
  double frame_dt_ns = 1.0;
  double mean_error_min = -0.04;
  double mean_error_max = 0.02;
  int mean_error_points = 61;

  TrapParams trap() const;
  MotionContext motion() const;
  HardwareLimits limits() const;
  TrainConfig train_config() const;
  BudgetInputs budget_inputs() const;
  TargetRotation target() const;

  /// Canonical key = value text of every setting, in a fixed order.
  std::string resolved_ini() const;
  /// Hash of resolved_ini().
  std::string hash() const;
};

/// Defaults, then the preset named in [run], then the file. Unknown keys are
/// an error.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text);

}  // namespace tweezercp::cli
