// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <variant>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <tweezercp/constants.hpp>
#include <tweezercp/errors.hpp>
#include <tweezercp/hash.hpp>

namespace tweezercp::cli {

namespace {

using constants::kTwoPi;
namespace pt = boost::property_tree;

using Slot = std::variant<double*, int*, std::uint64_t*, std::string*, bool*>;

struct Key {
  const char* section;
  const char* name;
  Slot slot;
};

std::vector<Key> keys(ExperimentConfig& c) {
  TrainConfig& t = c.train;
  return {
      {"run", "seed", &c.seed},
      {"run", "preset", &c.preset},
      {"run", "train_segments", &c.train_segments},
      {"run", "report_segments", &c.report_segments},
      {"run", "eval_atoms", &c.eval_atoms},

      {"trap", "trap_depth_mK", &c.trap_depth_mK},
      {"trap", "omega_r_2pi_kHz", &c.omega_r_2pi_kHz},
      {"trap", "omega_z_2pi_kHz", &c.omega_z_2pi_kHz},
      {"trap", "temperature_uK", &c.temperature_uK},
      {"trap", "mass_amu", &c.mass_amu},
      {"trap", "derive_frequencies", &c.derive_frequencies},
      {"trap", "tweezer_radius_um", &c.tweezer_radius_um},
      {"trap", "tweezer_wavelength_nm", &c.tweezer_wavelength_nm},

      {"control", "radius_um", &c.control_radius_um},
      {"control", "wavelength_nm", &c.control_wavelength_nm},
      {"control", "misalign_r_nm", &c.misalign_r_nm},
      {"control", "misalign_z_nm", &c.misalign_z_nm},

      {"limits", "omega_max_2pi_MHz", &c.omega_max_2pi_MHz},
      {"limits", "delta_max_2pi_MHz", &c.delta_max_2pi_MHz},
      {"limits", "chi_min", &c.chi_min},
      {"limits", "chi_max", &c.chi_max},

      {"target", "area_rad", &c.target_area_rad},
      {"target", "theta_rad", &c.target_theta_rad},
      {"target", "phi_rad", &c.target_phi_rad},

      {"train", "baseline", &c.train_baseline},
      {"train", "epochs", &t.epochs},
      {"train", "batch_size", &t.batch_size},
      {"train", "lr0", &t.lr0},
      {"train", "decay_every_epochs", &t.decay_every},
      {"train", "cosine_period_epochs", &t.cosine_period},
      {"train", "patience_epochs", &t.patience},
      {"train", "hidden_width", &t.hidden_width},
      {"train", "hidden_layers", &t.hidden_layers},
      {"train", "head_scale", &t.head_scale},
      {"train", "max_segments", &t.m_max},
      {"train", "grid_area", &t.grid_area},
      {"train", "grid_theta", &t.grid_theta},
      {"train", "train_atoms", &t.train_atoms},
      {"train", "val_targets", &t.val_targets},
      {"train", "val_atoms", &t.val_atoms},

      {"budget", "xi", &c.xi},
      {"budget", "field_G", &c.field_G},
      {"budget", "mu_MHz_per_G", &c.mu_MHz_per_G},
      {"budget", "gamma_2pi_MHz", &c.gamma_2pi_MHz},
      {"budget", "raman_detuning_2pi_GHz", &c.raman_detuning_2pi_GHz},
      {"budget", "light_shift_offset_2pi_kHz", &c.light_shift_offset_2pi_kHz},
      {"budget", "light_shift_radial_2pi_kHz_per_um2", &c.light_shift_radial_2pi_kHz_per_um2},
      {"budget", "light_shift_axial_2pi_kHz_per_um2", &c.light_shift_axial_2pi_kHz_per_um2},
      {"budget", "atoms", &c.budget_atoms},

      {"spectrum", "window_us", &c.spectrum_window_us},
      {"spectrum", "dt_ns", &c.spectrum_dt_ns},
      {"spectrum", "atoms", &c.spectrum_atoms},
      {"spectrum", "frame_dt_ns", &c.frame_dt_ns},
      {"spectrum", "mean_error_min", &c.mean_error_min},
      {"spectrum", "mean_error_max", &c.mean_error_max},
      {"spectrum", "mean_error_points", &c.mean_error_points},
  };
}

std::string format_slot(const Slot& slot) {
  return std::visit(
      [](auto* p) -> std::string {
        if constexpr (std::is_same_v<decltype(p), bool*>) {
          return *p ? "true" : "false";
        } else {
          return fmt::format("{}", *p);
        }
      },
      slot);
}

void read_slot(const Slot& slot, const std::string& text, const std::string& where) {
  try {
    std::visit(
        [&](auto* p) {
          using T = std::remove_pointer_t<decltype(p)>;
          if constexpr (std::is_same_v<T, std::string>) {
            *p = text;
          } else if constexpr (std::is_same_v<T, bool>) {
            if (text == "true" || text == "1") {
              *p = true;
            } else if (text == "false" || text == "0") {
              *p = false;
            } else {
              throw std::invalid_argument("not a boolean");
            }
          } else {
            std::size_t used = 0;
            if constexpr (std::is_same_v<T, double>) {
              *p = std::stod(text, &used);
            } else if constexpr (std::is_same_v<T, int>) {
              *p = std::stoi(text, &used);
            } else {
              *p = std::stoull(text, &used);
            }
            if (used != text.size()) {
              throw std::invalid_argument("trailing characters");
            }
          }
        },
        slot);
  } catch (const std::exception&) {
    throw ConfigError("bad value '" + text + "' for " + where);
  }
}

}  // namespace

TrapParams ExperimentConfig::trap() const {
  const double depth = constants::kBoltzmann * trap_depth_mK * 1e-3;
  const double mass = mass_amu * constants::kAtomicMassUnit;
  const double temperature = temperature_uK * 1e-6;
  if (derive_frequencies) {
    const BeamGeometry tweezer =
        BeamGeometry::gaussian(tweezer_radius_um * 1e-6, tweezer_wavelength_nm * 1e-9);
    return derive_trap(tweezer, depth, mass, temperature);
  }
  TrapParams t;
  t.depth = depth;
  t.mass = mass;
  t.temperature = temperature;
  t.omega = {kTwoPi * omega_r_2pi_kHz * 1e3, kTwoPi * omega_r_2pi_kHz * 1e3,
             kTwoPi * omega_z_2pi_kHz * 1e3};
  return t;
}

MotionContext ExperimentConfig::motion() const {
  MotionContext m;
  m.trap = trap();
  m.control = BeamGeometry::gaussian(control_radius_um * 1e-6, control_wavelength_nm * 1e-9);
  m.control.center = Vec3(misalign_r_nm * 1e-9, 0.0, misalign_z_nm * 1e-9);
  return m;
}

HardwareLimits ExperimentConfig::limits() const {
  return {kTwoPi * omega_max_2pi_MHz * 1e6, kTwoPi * delta_max_2pi_MHz * 1e6, chi_min, chi_max};
}

TrainConfig ExperimentConfig::train_config() const {
  TrainConfig t = train;
  t.baseline = baseline_from_string(train_baseline);
  t.n_pulses = baseline_pulses(t.baseline);
  t.m_segments = train_segments;
  t.seed = seed;
  t.limits = limits();
  t.motion = motion();
  t.validate();
  return t;
}

BudgetInputs ExperimentConfig::budget_inputs() const {
  BudgetInputs in;
  in.omega_c = kTwoPi * omega_max_2pi_MHz * 1e6;
  in.area = target_area_rad;
  in.xi = xi;
  in.field_gauss = field_G;
  in.mu_mhz_per_gauss = mu_MHz_per_G;
  in.gamma = kTwoPi * gamma_2pi_MHz * 1e6;
  in.raman_detuning = kTwoPi * raman_detuning_2pi_GHz * 1e9;
  in.light_shift.offset = kTwoPi * light_shift_offset_2pi_kHz * 1e3;
  in.light_shift.radial = kTwoPi * light_shift_radial_2pi_kHz_per_um2 * 1e3 / 1e-12;
  in.light_shift.axial = kTwoPi * light_shift_axial_2pi_kHz_per_um2 * 1e3 / 1e-12;
  return in;
}

TargetRotation ExperimentConfig::target() const {
  return {target_area_rad, target_theta_rad, target_phi_rad};
}

std::string ExperimentConfig::resolved_ini() const {
  ExperimentConfig copy = *this;
  std::string out;
  std::string section;
  for (const Key& k : keys(copy)) {
    if (section != k.section) {
      section = k.section;
      out += fmt::format("{}[{}]\n", out.empty() ? "" : "\n", section);
    }
    out += fmt::format("{} = {}\n", k.name, format_slot(k.slot));
  }
  return out;
}

std::string ExperimentConfig::hash() const { return hash_hex(resolved_ini()); }

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("cannot parse config: ") + e.what());
  }

  ExperimentConfig cfg;
  const std::string preset = tree.get<std::string>("run.preset", "desk");
  if (preset == "desk") {
    cfg.train = TrainConfig::desk();
  } else if (preset == "full") {
    cfg.train = TrainConfig::full();
  } else {
    throw ConfigError("unknown preset '" + preset + "' (expected desk or full)");
  }

  std::set<std::string> known;
  for (const Key& k : keys(cfg)) {
    const std::string path = std::string(k.section) + "." + k.name;
    known.insert(path);
    if (const auto v = tree.get_optional<std::string>(path)) {
      read_slot(k.slot, *v, path);
    }
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError("key '" + section + "' must sit inside a [section]");
    }
    for (const auto& [name, value] : body) {
      if (known.count(section + "." + name) == 0) {
        throw ConfigError("unknown config key '" + section + "." + name + "'");
      }
    }
  }
  cfg.train_config();  // validates
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace tweezercp::cli
