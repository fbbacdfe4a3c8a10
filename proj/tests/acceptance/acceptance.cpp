// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

// Prints one PASS/FAIL line per acceptance criterion. Exits nonzero if any
// criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <tweezercp/budget.hpp>
#include <tweezercp/constants.hpp>
#include <tweezercp/evolve.hpp>
#include <tweezercp/spectral.hpp>
#include <tweezercp/trainer.hpp>

#include "cli/config.hpp"
#include "oracles.hpp"

namespace {

using namespace tweezercp;
using constants::kPi;
using constants::kTwoPi;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

const HardwareLimits kLim = HardwareLimits::reference();
const Unitary2 kTargetPi = su2_from_rotation({kPi, kPi / 2, 0.0});

std::vector<AtomSample> thermal(const TrapParams& trap, std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng = stream_rng(seed, 4);
  return sample_thermal(trap, rng, n);
}

Outcome rect_benchmark() {
  const MotionContext m = MotionContext::reference();
  const double f =
      ensemble_fidelity(rect(kPi, 0.0, kLim), kTargetPi, thermal(m.trap, 1, 10000), m, 100)
          .infidelity();
  return {std::abs(f / 9e-4 - 1.0) <= 0.5, fmt::format("1-F = {:.3e} (9e-4 +- 50%)", f)};
}

Outcome conventional_fail() {
  const MotionContext m = MotionContext::reference();
  const auto atoms = thermal(m.trap, 1, 10000);
  const double r = ensemble_fidelity(rect(kPi, 0.0, kLim), kTargetPi, atoms, m, 100).infidelity();
  const double s = ensemble_fidelity(sk1(kPi, 0.0, kLim), kTargetPi, atoms, m, 100).infidelity();
  const double b = ensemble_fidelity(bb1(kPi, 0.0, kLim), kTargetPi, atoms, m, 100).infidelity();
  return {s >= r && b >= r,
          fmt::format("rect {:.3e}, SK1 {:.3e} ({}), BB1 {:.3e} ({})", r, s,
                      s >= r ? ">= rect" : "< rect", b, b >= r ? ">= rect" : "< rect")};
}

double static_slope(const CompositePulse& cp) {
  const SegmentGrid grid = align_segments(cp, 20);
  std::vector<double> e = {0.005, 0.01, 0.02, 0.04};
  std::vector<double> f;
  for (double x : e) {
    f.push_back(gate_infidelity(kTargetPi, evolve(cp, [x](double) { return x; }, grid)));
  }
  return testing::loglog_slope(e, f);
}

Outcome scaling_laws() {
  const double r = static_slope(rect(kPi, 0.0, kLim));
  const double s = static_slope(sk1(kPi, 0.0, kLim));
  const double b = static_slope(bb1(kPi, 0.0, kLim));
  return {std::abs(r - 2) <= 0.1 && std::abs(s - 4) <= 0.1 && std::abs(b - 6) <= 0.2,
          fmt::format("slopes rect {:.3f}, SK1 {:.3f}, BB1 {:.3f}", r, s, b)};
}

Outcome gradient_check() {
  const TrainConfig c = TrainConfig::desk();
  std::mt19937_64 data_rng = stream_rng(c.seed, 0);
  const Datasets d = make_datasets(c, data_rng);
  std::mt19937_64 init_rng = stream_rng(c.seed, 1);
  const PulseNet net = init_network(c, init_rng);
  const std::vector<TargetPoint> batch(d.train.targets.begin(), d.train.targets.begin() + 4);
  const std::vector<AtomSample> atoms(d.train.atoms.begin(), d.train.atoms.begin() + 8);
  const LossGradient lg = gradient(net, batch, atoms, c.motion, c.m_segments);
  std::mt19937_64 pick(2024);
  std::uniform_int_distribution<Eigen::Index> idx(0, net.mlp.parameter_count() - 1);
  double worst = 0.0;
  const int n = 24;
  for (int k = 0; k < n; ++k) {
    const Eigen::Index i = idx(pick);
    PulseNet p = net;
    const double h = 1e-6;
    p.mlp.parameters()[i] += h;
    const double up = batch_loss(p, batch, atoms, c.motion, c.m_segments);
    p.mlp.parameters()[i] -= 2 * h;
    const double dn = batch_loss(p, batch, atoms, c.motion, c.m_segments);
    const double fd = (up - dn) / (2 * h);
    worst = std::max(worst, std::abs(lg.grad[i] - fd) / std::abs(fd));
  }
  return {worst <= 1e-4, fmt::format("{} weights, worst relative error {:.2e}", n, worst)};
}

Outcome desk_training() {
  const cli::ExperimentConfig cfg =
      cli::load_config(fs::path(TWEEZERCP_SOURCE_DIR) / "configs/desk.ini");
  const TrainConfig tc = cfg.train_config();
  std::mt19937_64 data_rng = stream_rng(tc.seed, 0);
  const TrainResult res = train(tc, make_datasets(tc, data_rng));
  const MotionContext m = cfg.motion();
  const auto fresh = thermal(m.trap, tc.seed, 1000);
  const TargetRotation tg{kPi, kPi / 2, 0.0};
  const double r = ensemble_fidelity(rect(kPi, 0.0, kLim), kTargetPi, fresh, m, 100).infidelity();
  const CompositePulse cp = compile(res.checkpoint.net, tg);
  const double t =
      ensemble_fidelity(cp, kTargetPi, fresh, m, refine_grid(cp, 100, 6400).segments())
          .infidelity();
  return {t <= r / 3.0,
          fmt::format("seed {}: trained {:.3e} vs rect {:.3e}, improvement {:.2f}x "
                      "(gate 3x; 10x {})",
                      tc.seed, t, r, r / t, r / t >= 10.0 ? "reached" : "not reached")};
}

Outcome magnus() {
  const MotionContext m = MotionContext::reference();
  const auto atoms = thermal(m.trap, 1, 200);
  double worst_slope = 0.0;
  std::string slopes;
  double mean_f = 0.0;
  double mean_q = 0.0;
  for (const CompositePulse& cp : {sk1(kPi, 0.0, kLim), bb1(kPi, 0.0, kLim)}) {
    const FrameSignal sig = frame_signal(cp, 1e-9);
    const SegmentGrid grid = align_segments(cp, 2000);
    const RotationVector D = displacement(kTargetPi, cp);
    std::vector<double> lambda = {1.0, 0.5, 0.25};
    std::vector<double> resid;
    for (double l : lambda) {
      double sum = 0.0;
      for (const AtomSample& s : atoms) {
        const auto eps = [&](double t) { return l * m.epsilon(s, t); };
        std::vector<double> e;
        for (double t : sig.t) {
          e.push_back(eps(t));
        }
        const RotationVector a = first_order_a(e, sig);
        const Unitary2 u = evolve(cp, eps, grid);
        sum += (a.a - su2_log_axis(cp.ideal().adjoint() * u).a).norm();
        if (l == 1.0) {
          const double q = (a.a - D.a).squaredNorm();
          if (q < 1e-3) {
            mean_f += gate_infidelity(kTargetPi, u);
            mean_q += q;
          }
        }
      }
      resid.push_back(sum / atoms.size());
    }
    const double slope = testing::loglog_slope(lambda, resid);
    slopes += fmt::format("{:.3f} ", slope);
    worst_slope = std::max(worst_slope, std::abs(slope - 2.0));
  }
  const double agree = std::abs(mean_f / mean_q - 1.0);
  return {worst_slope <= 0.1 && agree <= 0.1,
          fmt::format("residual slopes (SK1, BB1) {}; <1-F> / <|a-D|^2> - 1 = {:.2e}", slopes,
                      agree)};
}

std::size_t nearest_bin(const ErrorSpectrum& s, double w) {
  std::size_t best = 0;
  for (std::size_t k = 0; k < s.omega.size(); ++k) {
    if (std::abs(s.omega[k] - w) < std::abs(s.omega[best] - w)) {
      best = k;
    }
  }
  return best;
}

ErrorSpectrum spectrum_of(const MotionContext& m, const std::vector<AtomSample>& atoms) {
  return power_spectrum(error_realizations(atoms, m, 100e-9, 4000), 100e-9);
}

Outcome spectral() {
  const MotionContext m = MotionContext::reference();
  const auto atoms = thermal(m.trap, 1, 2000);
  const ErrorSpectrum spec = spectrum_of(m, atoms);
  const CompositePulse cp = rect(kPi, 0.0, kLim);
  const FrameSignal sig = frame_signal(cp, 1e-9);
  const FilterFunction ff = filter_amplitude(sig, spec.omega);
  const double G =
      residual_bias(spec.mean_eps, filter_amplitude_at(sig, 0.0).real(), displacement(kTargetPi, cp));
  const double lo = leading_order_infidelity(G, ff, spec);
  const double sim = ensemble_fidelity(cp, kTargetPi, atoms, m, 100).infidelity();

  std::vector<std::pair<double, std::size_t>> peaks;
  for (std::size_t k = 1; k + 1 < spec.S.size(); ++k) {
    if (spec.omega[k] > 0 && spec.S[k] > spec.S[k - 1] && spec.S[k] >= spec.S[k + 1]) {
      peaks.emplace_back(spec.S[k], k);
    }
  }
  std::sort(peaks.begin(), peaks.end(), std::greater<>());
  const std::size_t want_r = nearest_bin(spec, 2 * m.trap.omega[0]);
  const std::size_t want_z = nearest_bin(spec, 2 * m.trap.omega[2]);
  const bool peaks_ok = peaks.size() >= 2 && ((peaks[0].second == want_r && peaks[1].second == want_z) ||
                                              (peaks[0].second == want_z && peaks[1].second == want_r));
  const double rel = std::abs(lo / sim - 1.0);
  return {rel <= 0.25 && peaks_ok,
          fmt::format("leading order {:.3e} vs simulated {:.3e} ({:.1f}%); peaks at "
                      "{:.3f}, {:.3f} x 2pi MHz (2w_r {:.3f}, 2w_z {:.3f})",
                      lo, sim, 100 * rel, spec.omega[peaks[0].second] / kTwoPi * 1e-6,
                      spec.omega[peaks[1].second] / kTwoPi * 1e-6,
                      2 * m.trap.omega[0] / kTwoPi * 1e-6, 2 * m.trap.omega[2] / kTwoPi * 1e-6)};
}

Outcome misalignment() {
  const MotionContext aligned = MotionContext::reference();
  MotionContext shifted = aligned;
  shifted.control.center.x() = aligned.trap.position_sigma(0);
  const auto atoms = thermal(aligned.trap, 1, 2000);
  const ErrorSpectrum a = spectrum_of(aligned, atoms);
  const ErrorSpectrum s = spectrum_of(shifted, atoms);
  const std::size_t k = nearest_bin(a, aligned.trap.omega[0]);
  const double ratio = s.S[k] / a.S[k];
  return {ratio >= 5.0, fmt::format("S(w_r) misaligned / aligned = {:.3g}", ratio)};
}

Outcome sweep_monotonic() {
  const MotionContext base = MotionContext::reference();
  const auto atoms = thermal(base.trap, 1, 2000);
  const CompositePulse cp = rect(kPi, 0.0, kLim);
  std::vector<double> radius;
  for (int k = 0; k <= 10; ++k) {
    MotionContext m = base;
    const double dr = -0.1 + 0.02 * k;
    m.control = apply_inhomogeneity(base.control, {0.0, dr, dr});
    radius.push_back(ensemble_fidelity(cp, kTargetPi, atoms, m, 100).fidelity);
  }
  std::vector<double> shift;
  for (int k = 0; k <= 6; ++k) {
    MotionContext m = base;
    m.control.center.x() = base.trap.position_sigma(0) * k / 6.0;
    shift.push_back(ensemble_fidelity(cp, kTargetPi, atoms, m, 100).fidelity);
  }
  const bool up = std::is_sorted(radius.begin(), radius.end(), std::less<>()) &&
                  std::adjacent_find(radius.begin(), radius.end()) == radius.end();
  const bool down = std::is_sorted(shift.begin(), shift.end(), std::greater<>()) &&
                    std::adjacent_find(shift.begin(), shift.end()) == shift.end();
  return {up && down,
          fmt::format("F(dR=-10%) {:.6f} .. F(+10%) {:.6f} {}; F(dr=0) {:.6f} .. F(sigma_r) "
                      "{:.6f} {}",
                      radius.front(), radius.back(), up ? "increasing" : "NOT increasing",
                      shift.front(), shift.back(), down ? "decreasing" : "NOT decreasing")};
}

Outcome segment_convergence() {
  const MotionContext m = MotionContext::reference();
  const auto atoms = thermal(m.trap, 1, 1000);
  double worst = 0.0;
  for (const CompositePulse& cp : {rect(kPi, 0.0, kLim), sk1(kPi, 0.0, kLim), bb1(kPi, 0.0, kLim)}) {
    const double a = ensemble_fidelity(cp, kTargetPi, atoms, m, 20).fidelity;
    const double b = ensemble_fidelity(cp, kTargetPi, atoms, m, 200).fidelity;
    worst = std::max(worst, std::abs(a - b));
  }
  return {worst < 1e-5, fmt::format("max |F(20) - F(200)| = {:.2e}", worst)};
}

Outcome budget() {
  const MotionContext m = MotionContext::reference();
  const auto rows = error_budget(BudgetInputs::reference(), thermal(m.trap, 1, 10000), m);
  bool ok = true;
  std::string text;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const long decade = std::lround(std::log10(rows[k].value));
    ok = ok && decade == -3 - static_cast<long>(k);
    text += fmt::format("{} {:.2e}; ", rows[k].channel, rows[k].value);
  }
  const double s = rows[1].value;
  ok = ok && std::abs(s / 9.0e-5 - 1.0) <= 0.05;
  return {ok, text + "decades 1e-3/1e-4/1e-5/1e-6"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path root = fs::path(TWEEZERCP_TEST_TMP) / "determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "small.ini";
  std::ofstream(cfg) << "[run]\nseed = 11\neval_atoms = 200\n[spectrum]\natoms = 100\n"
                        "[budget]\natoms = 500\n[train]\nepochs = 20\npatience_epochs = 20\n"
                        "hidden_width = 16\nhidden_layers = 2\n";
  const std::vector<std::string> commands = {
      "train", "evaluate", "sweep --axis misalign_r --from 0 --to 30 --steps 3",
      "spectrum --pulse bb1", "budget", "compile --pulse sk1"};
  int files = 0;
  for (const std::string& c : commands) {
    for (const char* run : {"a", "b"}) {
      const std::string cmd = fmt::format("{} {} -c {} -o {} 2>/dev/null", TWEEZERCP_TOOL, c,
                                          cfg.string(), (root / run).string());
      const int status = std::system(cmd.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        return {false, "command failed: " + c};
      }
    }
  }
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    const fs::path other = root / "b" / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
      return {false, "differs: " + entry.path().filename().string()};
    }
    ++files;
  }
  return {files > 0, fmt::format("{} output files byte-identical across reruns", files)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::err);
  const std::vector<Criterion> criteria = {
      {1, "rect pi-pulse thermal infidelity", 60, rect_benchmark},
      {2, "conventional CPs fail under time-varying error", 120, conventional_fail},
      {3, "static-error scaling laws", 10, scaling_laws},
      {4, "gradient correctness", 60, gradient_check},
      {5, "desk-scale training efficacy", 1800, desk_training},
      {6, "Magnus / leading-order consistency", 120, magnus},
      {7, "spectral decomposition", 120, spectral},
      {8, "misalignment spectroscopy", 120, misalignment},
      {9, "sweep monotonicity", 300, sweep_monotonic},
      {10, "segment convergence", 120, segment_convergence},
      {11, "budget hierarchy", 1, budget},
      {12, "determinism", 600, determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s %2d %s: %s [%.1f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, in_time ? "" : ", over time budget");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
