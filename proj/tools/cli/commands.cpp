// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include <tweezercp/budget.hpp>
#include <tweezercp/checkpoint.hpp>
#include <tweezercp/constants.hpp>
#include <tweezercp/errors.hpp>
#include <tweezercp/evolve.hpp>
#include <tweezercp/spectral.hpp>
#include <tweezercp/trainer.hpp>

#include "cli/output.hpp"

namespace tweezercp::cli {

namespace fs = std::filesystem;
using constants::kTwoPi;
using json = nlohmann::ordered_json;

namespace {

Provenance provenance(const ExperimentConfig& cfg) { return {cfg.hash(), cfg.seed}; }

void echo_config(const ExperimentConfig& cfg, const fs::path& out) {
  write_text(out / "config.resolved.ini", cfg.resolved_ini());
}

std::vector<AtomSample> eval_atoms(const ExperimentConfig& cfg, const TrapParams& trap, int n) {
  std::mt19937_64 rng = stream_rng(cfg.seed, kEvalStream);
  return sample_thermal(trap, rng, static_cast<std::size_t>(n));
}

struct Family {
  std::string name;
  CompositePulse cp;
};

CompositePulse family_cp(const std::string& name, const ExperimentConfig& cfg,
                         const std::optional<Checkpoint>& ckpt) {
  const TargetRotation tg = cfg.target();
  const HardwareLimits lim = cfg.limits();
  if (name == "rect") {
    return apply_global_phase(rotate_cp(rect(tg.area, 0.0, lim), tg.theta, lim), tg.phi);
  }
  if (name == "sk1" || name == "bb1") {
    return apply_global_phase(
        rotated_baseline(baseline_from_string(name), tg.area, tg.theta, lim), tg.phi);
  }
  if (name == "trained") {
    if (!ckpt) {
      throw ConfigError("the trained family needs --checkpoint");
    }
    return compile(ckpt->net, tg);
  }
  throw ConfigError("unknown pulse family '" + name + "' (rect, sk1, bb1, trained)");
}

std::vector<Family> families(const ExperimentConfig& cfg, const std::optional<Checkpoint>& ckpt) {
  std::vector<Family> out;
  for (const char* name : {"rect", "sk1", "bb1"}) {
    out.push_back({name, family_cp(name, cfg, ckpt)});
  }
  if (ckpt) {
    out.push_back({"trained", family_cp("trained", cfg, ckpt)});
  }
  return out;
}

std::optional<Checkpoint> maybe_load(const std::optional<fs::path>& path) {
  if (!path) {
    return std::nullopt;
  }
  return load_checkpoint(*path);
}

// Segment count at or above m with no pulse-time collisions.
int segments_for(const CompositePulse& cp, int m) {
  return refine_grid(cp, m, 64 * m).segments();
}

EnsembleResult evaluate_cp(const CompositePulse& cp, const Unitary2& target,
                           const std::vector<AtomSample>& atoms, const MotionContext& motion,
                           int m) {
  return ensemble_fidelity(cp, target, atoms, motion, segments_for(cp, m));
}

}  // namespace

void run_train(const ExperimentConfig& cfg, const fs::path& out) {
  const TrainConfig tc = cfg.train_config();
  std::mt19937_64 data_rng = stream_rng(tc.seed, 0);
  const Datasets data = make_datasets(tc, data_rng);
  spdlog::info("training {} preset: {} epochs, {} train targets, {} validation targets",
               cfg.preset, tc.epochs, data.train.targets.size(), data.validation.targets.size());

  const TrainResult res = train(tc, data, [](const EpochRecord& e) {
    if (e.epoch % 50 == 0) {
      spdlog::info("epoch {:5d}  lr {:.3e}  loss {:.4e}  val 1-F {:.4e}", e.epoch, e.lr,
                   e.train_loss, 1.0 - e.val_fidelity);
    }
  });
  spdlog::info("validation 1-F {:.4e} -> {:.4e} (best epoch {})",
               1.0 - res.initial_val_fidelity, 1.0 - res.checkpoint.best_val_fidelity,
               res.checkpoint.best_epoch);

  const Provenance prov = provenance(cfg);
  CsvWriter curve("training_curve", {"epoch", "lr", "train_loss", "val_fidelity"}, prov);
  for (const EpochRecord& e : res.curve) {
    curve.row({std::to_string(e.epoch), num(e.lr), num(e.train_loss), num(e.val_fidelity)});
  }
  fs::create_directories(out);
  save_checkpoint(res.checkpoint, out / "checkpoint.json");
  curve.save(out / "training_curve.csv");
  echo_config(cfg, out);
}

void run_evaluate(const ExperimentConfig& cfg, const fs::path& out,
                  const std::optional<fs::path>& checkpoint) {
  const std::optional<Checkpoint> ckpt = maybe_load(checkpoint);
  const MotionContext motion = cfg.motion();
  const std::vector<AtomSample> atoms = eval_atoms(cfg, motion.trap, cfg.eval_atoms);
  const TargetRotation tg = cfg.target();
  const Unitary2 target = su2_from_rotation(tg);

  json j = stamped("evaluation", provenance(cfg));
  if (ckpt) {
    j["checkpoint_hash"] = checkpoint_hash(*ckpt);
  }
  j["target"] = {{"area_rad", tg.area}, {"theta_rad", tg.theta}, {"phi_rad", tg.phi}};
  j["atoms"] = cfg.eval_atoms;
  j["segments"] = cfg.report_segments;
  json rows = json::array();
  for (const Family& f : families(cfg, ckpt)) {
    const EnsembleResult r = evaluate_cp(f.cp, target, atoms, motion, cfg.report_segments);
    spdlog::info("{:8s} 1-F = {:.4e} +- {:.1e}", f.name, r.infidelity(), r.std_error);
    rows.push_back({{"family", f.name},
                    {"fidelity", r.fidelity},
                    {"infidelity", r.infidelity()},
                    {"std_error", r.std_error}});
  }
  j["rows"] = rows;
  write_json(out / "evaluation.json", j);
  echo_config(cfg, out);
}

void validate_sweep(const SweepSpec& spec) {
  static const std::vector<std::string> axes = {"control_dI", "control_dR", "tweezer_dI",
                                                "tweezer_dR", "misalign_r", "misalign_z"};
  if (std::find(axes.begin(), axes.end(), spec.axis) == axes.end()) {
    throw ConfigError("unknown sweep axis '" + spec.axis + "'");
  }
  if (spec.steps < 1) {
    throw ConfigError("sweep needs at least one step");
  }
}

void run_sweep(const ExperimentConfig& cfg, const fs::path& out, const SweepSpec& spec,
               const std::optional<fs::path>& checkpoint) {
  validate_sweep(spec);
  const std::optional<Checkpoint> ckpt = maybe_load(checkpoint);
  const MotionContext base = cfg.motion();
  const Unitary2 target = su2_from_rotation(cfg.target());
  const std::vector<Family> fams = families(cfg, ckpt);
  const bool misalign = spec.axis.rfind("misalign", 0) == 0;
  const char* unit = misalign ? "nm" : "fraction";

  CsvWriter csv("sweep", {"axis", "value", "unit", "family", "mean_fidelity", "std_error"},
                provenance(cfg));
  for (int k = 0; k < spec.steps; ++k) {
    const double v =
        spec.steps == 1 ? spec.from : spec.from + (spec.to - spec.from) * k / (spec.steps - 1);
    MotionContext motion = base;
    if (spec.axis == "control_dI") {
      motion.control = apply_inhomogeneity(base.control, {v, 0.0, 0.0});
    } else if (spec.axis == "control_dR") {
      motion.control = apply_inhomogeneity(base.control, {0.0, v, v});
    } else if (spec.axis == "tweezer_dI") {
      motion.trap = rescale_trap(base.trap, {v, 0.0, 0.0});
    } else if (spec.axis == "tweezer_dR") {
      motion.trap = rescale_trap(base.trap, {0.0, v, v});
    } else if (spec.axis == "misalign_r") {
      motion.control.center.x() = v * 1e-9;
    } else {
      motion.control.center.z() = v * 1e-9;
    }
    // Same draws at every point, rescaled by the local trap.
    const std::vector<AtomSample> atoms = eval_atoms(cfg, motion.trap, cfg.eval_atoms);
    for (const Family& f : fams) {
      const EnsembleResult r = evaluate_cp(f.cp, target, atoms, motion, cfg.report_segments);
      csv.row({spec.axis, num(v), unit, f.name, num(r.fidelity), num(r.std_error)});
    }
    spdlog::info("{} = {} done", spec.axis, v);
  }
  csv.save(out / "sweep.csv");
  echo_config(cfg, out);
}

void run_spectrum(const ExperimentConfig& cfg, const fs::path& out, const std::string& family,
                  const std::optional<fs::path>& checkpoint) {
  const std::optional<Checkpoint> ckpt = maybe_load(checkpoint);
  const CompositePulse cp = family_cp(family, cfg, ckpt);
  const Unitary2 target = su2_from_rotation(cfg.target());
  const MotionContext motion = cfg.motion();
  const std::vector<AtomSample> atoms = eval_atoms(cfg, motion.trap, cfg.spectrum_atoms);

  const double dt = cfg.spectrum_dt_ns * 1e-9;
  const auto n = static_cast<std::size_t>(std::llround(cfg.spectrum_window_us * 1e-6 / dt));
  const ErrorSpectrum spec = power_spectrum(error_realizations(atoms, motion, dt, n), dt);
  const FrameSignal sig = frame_signal(cp, cfg.frame_dt_ns * 1e-9);
  const FilterFunction ff = filter_amplitude(sig, spec.omega);
  const Vec3 r0 = filter_amplitude_at(sig, 0.0).real();
  const RotationVector D = displacement(target, cp);
  const double G = residual_bias(spec.mean_eps, r0, D);
  const double predicted = leading_order_infidelity(G, ff, spec);
  const double simulated =
      evaluate_cp(cp, target, atoms, motion, cfg.report_segments).infidelity();
  spdlog::info("{}: simulated 1-F {:.4e}, leading order {:.4e}, G {:.3e}", family, simulated,
               predicted, G);

  const Provenance prov = provenance(cfg);
  CsvWriter sc("spectrum", {"omega_rad_per_s", "r2_x", "r2_y", "r2_z", "r2_total", "S"}, prov);
  for (std::size_t k = 0; k < spec.omega.size(); ++k) {
    const Vec3c& r = ff.r[k];
    sc.row({num(spec.omega[k]), num(std::norm(r.x())), num(std::norm(r.y())),
            num(std::norm(r.z())), num(ff.r2(k)), num(spec.S[k])});
  }
  CsvWriter gc("residual_bias", {"mean_eps", "G"}, prov);
  const int np = cfg.mean_error_points;
  for (int k = 0; k < np; ++k) {
    const double e = np == 1 ? cfg.mean_error_min
                             : cfg.mean_error_min +
                                   (cfg.mean_error_max - cfg.mean_error_min) * k / (np - 1);
    gc.row({num(e), num(residual_bias(e, r0, D))});
  }

  // Two largest local maxima of S at positive frequency.
  std::vector<std::pair<double, double>> peaks;
  for (std::size_t k = 1; k + 1 < spec.S.size(); ++k) {
    if (spec.omega[k] > 0.0 && spec.S[k] > spec.S[k - 1] && spec.S[k] >= spec.S[k + 1]) {
      peaks.emplace_back(spec.S[k], spec.omega[k]);
    }
  }
  std::sort(peaks.begin(), peaks.end(), std::greater<>());
  json pj = json::array();
  for (std::size_t k = 0; k < std::min<std::size_t>(2, peaks.size()); ++k) {
    pj.push_back({{"omega_rad_per_s", peaks[k].second}, {"S", peaks[k].first}});
  }

  json j = stamped("spectrum_summary", prov);
  j["family"] = family;
  j["mean_eps"] = spec.mean_eps;
  j["window_s"] = spec.window;
  j["r0"] = {r0.x(), r0.y(), r0.z()};
  j["displacement"] = {D.a.x(), D.a.y(), D.a.z()};
  j["residual_bias"] = G;
  j["leading_order_infidelity"] = predicted;
  j["simulated_infidelity"] = simulated;
  j["largest_peaks"] = pj;

  sc.save(out / "spectrum.csv");
  gc.save(out / "residual_bias.csv");
  write_json(out / "spectrum_summary.json", j);
  echo_config(cfg, out);
}

void run_budget(const ExperimentConfig& cfg, const fs::path& out) {
  const BudgetInputs in = cfg.budget_inputs();
  const MotionContext motion = cfg.motion();
  const std::vector<AtomSample> atoms = eval_atoms(cfg, motion.trap, cfg.budget_atoms);
  const std::vector<BudgetRow> rows = error_budget(in, atoms, motion);

  const Provenance prov = provenance(cfg);
  CsvWriter csv("budget", {"channel", "value", "alternative", "valid"}, prov);
  json j = stamped("budget", prov);
  json jr = json::array();
  for (const BudgetRow& r : rows) {
    spdlog::info("{:14s} {:.3e}{}", r.channel, r.value, r.valid ? "" : " (outside validity)");
    csv.row({r.channel, num(r.value), num(r.alternative), r.valid ? "true" : "false"});
    jr.push_back({{"channel", r.channel},
                  {"value", r.value},
                  {"alternative", r.alternative},
                  {"valid", r.valid}});
  }
  j["rows"] = jr;
  csv.save(out / "budget.csv");
  write_json(out / "budget.json", j);
  echo_config(cfg, out);
}

void run_compile(const ExperimentConfig& cfg, const fs::path& out, const std::string& family,
                 const std::optional<fs::path>& checkpoint) {
  const CompositePulse cp = family_cp(family, cfg, maybe_load(checkpoint));
  CsvWriter csv("pulses",
                {"index", "re_omega_2pi_Hz", "im_omega_2pi_Hz", "delta_2pi_Hz", "tau_s"},
                provenance(cfg));
  for (std::size_t k = 0; k < cp.size(); ++k) {
    const Pulse& p = cp.pulses[k];
    csv.row({std::to_string(k), num(p.omega.real() / kTwoPi), num(p.omega.imag() / kTwoPi),
             num(p.delta / kTwoPi), num(p.tau)});
  }
  csv.save(out / "pulses.csv");
  echo_config(cfg, out);
}

}  // namespace tweezercp::cli
