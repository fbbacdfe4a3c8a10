// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <tweezercp/errors.hpp>
#include <tweezercp/parallel.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/output.hpp"

namespace {

using namespace tweezercp;
using namespace tweezercp::cli;

constexpr int kUsage = 1;
constexpr int kNumeric = 2;

struct Overrides {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> atoms;
  std::optional<int> segments;
  std::optional<double> area;
  std::optional<double> theta;
  std::optional<double> phi;
  std::optional<std::string> checkpoint;
  std::string pulse = "rect";
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config, "INI config (defaults when omitted)");
  cmd->add_option("-o,--out", o.out, "output directory");
  cmd->add_option("--seed", o.seed, "override [run] seed");
}

void add_target(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--area", o.area, "target rotation angle, rad");
  cmd->add_option("--theta", o.theta, "target axis polar angle, rad");
  cmd->add_option("--phi", o.phi, "target axis azimuth, rad");
}

ExperimentConfig resolve(const Overrides& o, int ExperimentConfig::*atoms_field) {
  ExperimentConfig cfg = o.config.empty() ? parse_config("") : load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (o.atoms && atoms_field) cfg.*atoms_field = *o.atoms;
  if (o.segments) cfg.report_segments = *o.segments;
  if (o.area) cfg.target_area_rad = *o.area;
  if (o.theta) cfg.target_theta_rad = *o.theta;
  if (o.phi) cfg.target_phi_rad = *o.phi;
  cfg.train_config();  // revalidate after overrides
  return cfg;
}

std::optional<std::filesystem::path> ckpt_path(const Overrides& o) {
  if (!o.checkpoint) {
    return std::nullopt;
  }
  return std::filesystem::path(*o.checkpoint);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composite-pulse design and analysis for atoms in optical tweezers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));
  unsigned threads = 0;
  bool verbose = false;
  app.add_option("-j,--threads", threads, "worker threads (0 = hardware concurrency)");
  app.add_flag("-v,--verbose", verbose, "debug logging");

  Overrides o;
  SweepSpec sweep;

  auto* train = app.add_subcommand("train", "train a pulse network");
  add_common(train, o);

  auto* evaluate = app.add_subcommand("evaluate", "thermal-ensemble fidelity report");
  add_common(evaluate, o);
  add_target(evaluate, o);
  evaluate->add_option("--checkpoint", o.checkpoint, "trained checkpoint");
  evaluate->add_option("--atoms", o.atoms, "override [run] eval_atoms");
  evaluate->add_option("--segments", o.segments, "override [run] report_segments");

  auto* sw = app.add_subcommand("sweep", "fidelity against one beam or trap deviation");
  add_common(sw, o);
  add_target(sw, o);
  sw->add_option("--axis", sweep.axis,
                 "control_dI | control_dR | tweezer_dI | tweezer_dR | misalign_r | misalign_z")
      ->required();
  sw->add_option("--from", sweep.from, "first value (fraction, or nm for misalign)")
      ->required();
  sw->add_option("--to", sweep.to, "last value")->required();
  sw->add_option("--steps", sweep.steps, "grid points")->required();
  sw->add_option("--checkpoint", o.checkpoint, "trained checkpoint");
  sw->add_option("--atoms", o.atoms, "override [run] eval_atoms");
  sw->add_option("--segments", o.segments, "override [run] report_segments");

  auto* spectrum = app.add_subcommand("spectrum", "filter function, error spectrum, bias curve");
  add_common(spectrum, o);
  add_target(spectrum, o);
  spectrum->add_option("--pulse", o.pulse, "rect | sk1 | bb1 | trained");
  spectrum->add_option("--checkpoint", o.checkpoint, "trained checkpoint");
  spectrum->add_option("--atoms", o.atoms, "override [spectrum] atoms");

  auto* budget = app.add_subcommand("budget", "error budget table");
  add_common(budget, o);
  budget->add_option("--atoms", o.atoms, "override [budget] atoms");

  auto* comp = app.add_subcommand("compile", "pulse table for one target");
  add_common(comp, o);
  add_target(comp, o);
  comp->add_option("--pulse", o.pulse, "rect | sk1 | bb1 | trained");
  comp->add_option("--checkpoint", o.checkpoint, "trained checkpoint");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  auto logger = spdlog::stderr_color_st("tweezercp");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);
  if (threads > 0) {
    set_thread_count(threads);
  }

  try {
    const std::filesystem::path out = o.out;
    if (train->parsed()) {
      run_train(resolve(o, nullptr), out);
    } else if (evaluate->parsed()) {
      run_evaluate(resolve(o, &ExperimentConfig::eval_atoms), out, ckpt_path(o));
    } else if (sw->parsed()) {
      validate_sweep(sweep);
      run_sweep(resolve(o, &ExperimentConfig::eval_atoms), out, sweep, ckpt_path(o));
    } else if (spectrum->parsed()) {
      run_spectrum(resolve(o, &ExperimentConfig::spectrum_atoms), out, o.pulse, ckpt_path(o));
    } else if (budget->parsed()) {
      run_budget(resolve(o, &ExperimentConfig::budget_atoms), out);
    } else if (comp->parsed()) {
      run_compile(resolve(o, nullptr), out, o.pulse, ckpt_path(o));
    }
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const FormatError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kNumeric;
  }
  return 0;
}
