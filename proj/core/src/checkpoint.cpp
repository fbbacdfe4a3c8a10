// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "tweezercp/checkpoint.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tweezercp/errors.hpp"
#include "tweezercp/hash.hpp"

namespace tweezercp {

using nlohmann::json;

std::string hex_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::hex);
  return std::string(buf.data(), res.ptr);
}

double parse_hex_double(const std::string& s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x, std::chars_format::hex);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw FormatError("bad hex-float value '" + s + "'");
  }
  return x;
}

namespace {

constexpr const char* kFormatTag = "tweezercp-checkpoint";

json hx(double x) { return hex_double(x); }

double rd(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw FormatError(std::string("checkpoint is missing '") + key + "'");
  }
  return parse_hex_double(j.at(key).get<std::string>());
}

template <typename T>
T rd_int(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw FormatError(std::string("checkpoint is missing '") + key + "'");
  }
  return j.at(key).get<T>();
}

json vec_json(const double* x, std::size_t n) {
  json a = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    a.push_back(hx(x[i]));
  }
  return a;
}

template <std::size_t N>
std::array<double, N> read_array(const json& j, const char* key) {
  const json& a = j.at(key);
  if (a.size() != N) {
    throw FormatError(std::string("wrong length for '") + key + "'");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = parse_hex_double(a[i].get<std::string>());
  }
  return out;
}

json limits_json(const HardwareLimits& l) {
  return {{"omega_max", hx(l.omega_max)},
          {"delta_max", hx(l.delta_max)},
          {"chi_min", hx(l.chi_min)},
          {"chi_max", hx(l.chi_max)}};
}

HardwareLimits limits_from(const json& j) {
  return {rd(j, "omega_max"), rd(j, "delta_max"), rd(j, "chi_min"), rd(j, "chi_max")};
}

json box_json(const TargetBox& b) {
  return {{"area_min", hx(b.area_min)},
          {"area_max", hx(b.area_max)},
          {"theta_min", hx(b.theta_min)},
          {"theta_max", hx(b.theta_max)}};
}

TargetBox box_from(const json& j) {
  return {rd(j, "area_min"), rd(j, "area_max"), rd(j, "theta_min"), rd(j, "theta_max")};
}

json motion_json(const MotionContext& m) {
  const BeamGeometry& c = m.control;
  return {{"trap",
           {{"depth_J", hx(m.trap.depth)},
            {"omega_rad_s", vec_json(m.trap.omega.data(), 3)},
            {"mass_kg", hx(m.trap.mass)},
            {"temperature_K", hx(m.trap.temperature)}}},
          {"control",
           {{"radius_m", vec_json(std::array{c.radius_x, c.radius_y}.data(), 2)},
            {"rayleigh_m", vec_json(std::array{c.rayleigh_x, c.rayleigh_y}.data(), 2)},
            {"peak_intensity", hx(c.peak_intensity)},
            {"center_m", vec_json(c.center.data(), 3)}}},
          {"nominal_intensity", hx(m.nominal_intensity)}};
}

MotionContext motion_from(const json& j) {
  MotionContext m;
  const json& t = j.at("trap");
  m.trap.depth = rd(t, "depth_J");
  m.trap.omega = read_array<3>(t, "omega_rad_s");
  m.trap.mass = rd(t, "mass_kg");
  m.trap.temperature = rd(t, "temperature_K");
  const json& c = j.at("control");
  const auto r = read_array<2>(c, "radius_m");
  const auto z = read_array<2>(c, "rayleigh_m");
  const auto ctr = read_array<3>(c, "center_m");
  m.control.radius_x = r[0];
  m.control.radius_y = r[1];
  m.control.rayleigh_x = z[0];
  m.control.rayleigh_y = z[1];
  m.control.peak_intensity = rd(c, "peak_intensity");
  m.control.center = Vec3(ctr[0], ctr[1], ctr[2]);
  m.nominal_intensity = rd(j, "nominal_intensity");
  return m;
}

json config_json(const TrainConfig& c) {
  return {{"n_pulses", c.n_pulses},
          {"baseline", to_string(c.baseline)},
          {"hidden_width", c.hidden_width},
          {"hidden_layers", c.hidden_layers},
          {"head_scale", hx(c.head_scale)},
          {"epochs", c.epochs},
          {"batch_size", c.batch_size},
          {"lr0", hx(c.lr0)},
          {"decay_every", c.decay_every},
          {"cosine_period", c.cosine_period},
          {"patience", c.patience},
          {"m_segments", c.m_segments},
          {"m_max", c.m_max},
          {"grid_area", c.grid_area},
          {"grid_theta", c.grid_theta},
          {"train_atoms", c.train_atoms},
          {"val_targets", c.val_targets},
          {"val_atoms", c.val_atoms},
          {"seed", c.seed},
          {"box", box_json(c.box)},
          {"limits", limits_json(c.limits)},
          {"motion", motion_json(c.motion)}};
}

TrainConfig config_from(const json& j) {
  TrainConfig c;
  c.n_pulses = rd_int<int>(j, "n_pulses");
  c.baseline = baseline_from_string(j.at("baseline").get<std::string>());
  c.hidden_width = rd_int<int>(j, "hidden_width");
  c.hidden_layers = rd_int<int>(j, "hidden_layers");
  c.head_scale = rd(j, "head_scale");
  c.epochs = rd_int<int>(j, "epochs");
  c.batch_size = rd_int<int>(j, "batch_size");
  c.lr0 = rd(j, "lr0");
  c.decay_every = rd_int<int>(j, "decay_every");
  c.cosine_period = rd_int<int>(j, "cosine_period");
  c.patience = rd_int<int>(j, "patience");
  c.m_segments = rd_int<int>(j, "m_segments");
  c.m_max = rd_int<int>(j, "m_max");
  c.grid_area = rd_int<int>(j, "grid_area");
  c.grid_theta = rd_int<int>(j, "grid_theta");
  c.train_atoms = rd_int<int>(j, "train_atoms");
  c.val_targets = rd_int<int>(j, "val_targets");
  c.val_atoms = rd_int<int>(j, "val_atoms");
  c.seed = rd_int<std::uint64_t>(j, "seed");
  c.box = box_from(j.at("box"));
  c.limits = limits_from(j.at("limits"));
  c.motion = motion_from(j.at("motion"));
  return c;
}

}  // namespace

std::string checkpoint_to_json(const Checkpoint& ckpt) {
  const PulseNet& net = ckpt.net;
  const Eigen::VectorXd& w = net.mlp.parameters();
  json j;
  j["format"] = kFormatTag;
  j["version"] = Checkpoint::kFormatVersion;
  j["network"] = {
      {"layers", net.mlp.sizes()},
      {"activation", "elu"},
      {"output_activation", "linear"},
      {"layout", "per layer: row-major (out x in) weights, then biases"},
      {"weights", vec_json(w.data(), static_cast<std::size_t>(w.size()))},
      {"n_pulses", net.n_pulses},
      {"baseline", to_string(net.baseline)},
      {"head_scale", hx(net.head_scale)},
      {"range_map", "area = 4pi s(z0); chi = chi_min + (chi_max - chi_min) s(z1); "
                    "theta = pi s(z2); phi = z3"},
      {"box", box_json(net.box)},
      {"limits", limits_json(net.limits)}};
  j["config"] = config_json(ckpt.config);
  j["best_val_fidelity"] = hx(ckpt.best_val_fidelity);
  j["best_epoch"] = ckpt.best_epoch;
  j["epochs_run"] = ckpt.epochs_run;
  j["seed"] = ckpt.config.seed;
  return j.dump(1) + "\n";
}

Checkpoint checkpoint_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("format", "") != kFormatTag) {
      throw FormatError("not a tweezercp checkpoint");
    }
    if (j.at("version").get<int>() != Checkpoint::kFormatVersion) {
      throw FormatError("unsupported checkpoint version");
    }
    const json& n = j.at("network");
    if (n.at("activation").get<std::string>() != "elu") {
      throw FormatError("unsupported activation");
    }
    Checkpoint ckpt;
    ckpt.net.mlp = Mlp(n.at("layers").get<std::vector<int>>());
    const json& wj = n.at("weights");
    Eigen::VectorXd& w = ckpt.net.mlp.parameters();
    if (static_cast<Eigen::Index>(wj.size()) != w.size()) {
      throw FormatError("weight count does not match the layer sizes");
    }
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      w[i] = parse_hex_double(wj[static_cast<std::size_t>(i)].get<std::string>());
    }
    ckpt.net.n_pulses = rd_int<int>(n, "n_pulses");
    ckpt.net.baseline = baseline_from_string(n.at("baseline").get<std::string>());
    ckpt.net.head_scale = rd(n, "head_scale");
    ckpt.net.box = box_from(n.at("box"));
    ckpt.net.limits = limits_from(n.at("limits"));
    if (ckpt.net.mlp.output_size() != 4 * ckpt.net.n_pulses) {
      throw FormatError("output layer does not match the pulse count");
    }
    ckpt.config = config_from(j.at("config"));
    ckpt.best_val_fidelity = rd(j, "best_val_fidelity");
    ckpt.best_epoch = rd_int<int>(j, "best_epoch");
    ckpt.epochs_run = rd_int<int>(j, "epochs_run");
    return ckpt;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw FormatError("cannot write " + path.string());
  }
  out << checkpoint_to_json(ckpt);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot read " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_json(ss.str());
}

std::string checkpoint_hash(const Checkpoint& ckpt) { return hash_hex(checkpoint_to_json(ckpt)); }

}  // namespace tweezercp
