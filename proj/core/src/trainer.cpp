// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "tweezercp/trainer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

#include "quaternion.hpp"
#include "tweezercp/constants.hpp"
#include "tweezercp/errors.hpp"
#include "tweezercp/evolve.hpp"
#include "tweezercp/parallel.hpp"
#include "tweezercp/schedule.hpp"

namespace tweezercp {

using constants::kPi;
using detail::Quat;

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

// Keeps baseline chi = 1 representable by the logistic head.
constexpr double kChiMargin = 1e-4;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  }
  return out;
}

Quat target_quat(double area, double theta) {
  const double s = std::sin(0.5 * area);
  return {std::cos(0.5 * area), s * axis_from_angles(theta, 0.0)};
}

// Pulse k as (Re W, Im W, D, tau) together with everything needed to pull
// gradients back to the raw head.
struct PulseJet {
  double area, chi, theta, phi;
  AxisWeights w;
  Pulse pulse;
};

std::vector<PulseJet> decode(const PulseNet& net, const Eigen::VectorXd& z) {
  const HardwareLimits& lim = net.limits;
  std::vector<PulseJet> jets(static_cast<std::size_t>(net.n_pulses));
  for (int k = 0; k < net.n_pulses; ++k) {
    PulseJet& j = jets[static_cast<std::size_t>(k)];
    j.area = 4.0 * kPi * logistic(z[4 * k]);
    j.chi = lim.chi_min + (lim.chi_max - lim.chi_min) * logistic(z[4 * k + 1]);
    j.theta = kPi * logistic(z[4 * k + 2]);
    j.phi = z[4 * k + 3];
    j.w = axis_weights(j.theta, lim);
    j.pulse.omega = std::polar(j.chi * j.w.omega, j.phi);
    j.pulse.delta = j.chi * j.w.delta;
    j.pulse.tau = j.area / (j.chi * j.w.norm());
  }
  return jets;
}

CompositePulse to_cp(const std::vector<PulseJet>& jets) {
  CompositePulse cp;
  for (const auto& j : jets) {
    cp.pulses.push_back(j.pulse);
  }
  return cp;
}

// Gradient of a scalar with respect to (Re W, Im W, D, tau) of each pulse.
using PulseGrad = std::vector<std::array<double, 4>>;

// Infidelity of one atom against the target; adds dF/d(pulse) into grad when
// given. Segment quaternions q_l act as U_l; the ordered product P is
// q_{m-1} ... q_0 and F = <t, P>^2.
double pair_infidelity(const CompositePulse& cp, const SegmentGrid& grid, const Quat& target,
                       const AtomSample& atom, const MotionContext& motion, PulseGrad* grad) {
  const int m = grid.segments();
  const auto mm = static_cast<std::size_t>(m);
  const std::vector<double> starts = cp.start_times();

  struct Segment {
    std::size_t k;
    double dt, e, e_rate, angle, sc;
    Vec3 w, v;
    Quat q;
  };
  std::vector<Segment> seg(mm);
  std::vector<Quat> prefix(mm + 1);
  for (std::size_t l = 0; l < mm; ++l) {
    Segment& s = seg[l];
    const double s0 = grid.boundaries[l];
    const double s1 = grid.boundaries[l + 1];
    const double mid = 0.5 * (s0 + s1);
    s.k = static_cast<std::size_t>(std::upper_bound(starts.begin(), starts.end(), mid) -
                                   starts.begin() - 1);
    const Pulse& p = cp.pulses[s.k];
    s.dt = s1 - s0;
    s.e = motion.epsilon(atom, mid);
    s.e_rate = grad != nullptr ? motion.epsilon_rate(atom, mid) : 0.0;
    s.w = Vec3((1.0 + s.e) * p.omega.real(), (1.0 + s.e) * p.omega.imag(), p.delta);
    s.v = 0.5 * s.dt * s.w;
    s.angle = s.v.norm();
    s.sc = sinc(s.angle);
    s.q = {std::cos(s.angle), s.sc * s.v};
    prefix[l + 1] = s.q * prefix[l];
  }
  const Quat residual = target.conj() * prefix[mm];
  const double infidelity = residual.v.squaredNorm();
  if (grad == nullptr) {
    return infidelity;
  }

  const double overlap = residual.w;
  std::vector<double> g_bound(mm + 1, 0.0);
  Quat b = target;
  for (std::size_t l = mm; l-- > 0;) {
    const Segment& s = seg[l];
    const Quat gq = scaled(b * prefix[l].conj(), 2.0 * overlap);
    b = s.q.conj() * b;

    const double th2 = s.angle * s.angle;
    const double kappa =
        th2 < 1e-6 ? -1.0 / 3.0 + th2 / 30.0 : (std::cos(s.angle) - s.sc) / th2;
    const Vec3 gv = -gq.w * s.sc * s.v + s.sc * gq.v + kappa * s.v * s.v.dot(gq.v);
    const double g_dt = 0.5 * s.w.dot(gv);
    const Vec3 gw = 0.5 * s.dt * gv;

    const Pulse& p = cp.pulses[s.k];
    auto& gk = (*grad)[s.k];
    gk[0] += gw.x() * (1.0 + s.e);
    gk[1] += gw.y() * (1.0 + s.e);
    gk[2] += gw.z();
    const double g_mid = (gw.x() * p.omega.real() + gw.y() * p.omega.imag()) * s.e_rate;
    g_bound[l] += 0.5 * g_mid - g_dt;
    g_bound[l + 1] += 0.5 * g_mid + g_dt;
  }

  // Boundaries are j T / m except the pinned ones, which sit on pulse times.
  std::vector<int> pinned_pulse(mm + 1, -1);
  for (std::size_t k = 0; k < grid.pinned.size(); ++k) {
    pinned_pulse[static_cast<std::size_t>(grid.pinned[k])] = static_cast<int>(k);
  }
  const std::size_t n = cp.size();
  double uniform = 0.0;
  std::vector<double> g_start(n + 1, 0.0);  // d/dT_k, with T_n = T
  for (std::size_t l = 0; l <= mm; ++l) {
    if (pinned_pulse[l] >= 0) {
      g_start[static_cast<std::size_t>(pinned_pulse[l])] += g_bound[l];
    } else {
      uniform += g_bound[l] * static_cast<double>(l) / m;
    }
  }
  // T_k depends on tau_j for j < k; T on every tau.
  double suffix = g_start[n] + uniform;
  for (std::size_t j = n; j-- > 0;) {
    (*grad)[j][3] += suffix;
    suffix += g_start[j];
  }
  return infidelity;
}

// Chains dF/d(pulse) to dF/d(raw head).
Eigen::VectorXd pulse_to_raw_grad(const PulseNet& net, const Eigen::VectorXd& z,
                                  const std::vector<PulseJet>& jets, const PulseGrad& g) {
  const HardwareLimits& lim = net.limits;
  Eigen::VectorXd gz(z.size());
  for (std::size_t k = 0; k < jets.size(); ++k) {
    const PulseJet& j = jets[k];
    const auto& gp = g[k];
    const double c = std::cos(j.phi);
    const double s = std::sin(j.phi);
    const double n = j.w.norm();
    const double dn = (j.w.omega * j.w.d_omega + j.w.delta * j.w.d_delta) / n;
    const double tau = j.pulse.tau;
    const double along = gp[0] * c + gp[1] * s;

    const double g_area = gp[3] / (j.chi * n);
    const double g_chi = along * j.w.omega + gp[2] * j.w.delta - gp[3] * tau / j.chi;
    const double g_theta =
        j.chi * j.w.d_omega * along + gp[2] * j.chi * j.w.d_delta - gp[3] * tau * dn / n;
    const double g_phi = j.chi * j.w.omega * (-gp[0] * s + gp[1] * c);

    const auto i = static_cast<Eigen::Index>(4 * k);
    const double sa = logistic(z[i]);
    const double sc = logistic(z[i + 1]);
    const double st = logistic(z[i + 2]);
    gz[i] = g_area * 4.0 * kPi * sa * (1.0 - sa);
    gz[i + 1] = g_chi * (lim.chi_max - lim.chi_min) * sc * (1.0 - sc);
    gz[i + 2] = g_theta * kPi * st * (1.0 - st);
    gz[i + 3] = g_phi;
  }
  return gz;
}

struct TargetEval {
  double infidelity = 0.0;  // mean over atoms
  Eigen::VectorXd grad;     // d(mean infidelity)/d(weights)
};

TargetEval evaluate_target(const PulseNet& net, const TargetPoint& target,
                           const std::vector<AtomSample>& atoms, const MotionContext& motion,
                           int m, int m_max, bool want_grad) {
  Mlp::Tape tape;
  const Eigen::VectorXd z = net.raw(target.area, target.theta, want_grad ? &tape : nullptr);
  const std::vector<PulseJet> jets = decode(net, z);
  const CompositePulse cp = to_cp(jets);
  const SegmentGrid grid = refine_grid(cp, m, m_max);
  const Quat tq = target_quat(target.area, target.theta);

  PulseGrad pg(jets.size(), {0.0, 0.0, 0.0, 0.0});
  double sum = 0.0;
  for (const auto& atom : atoms) {
    sum += pair_infidelity(cp, grid, tq, atom, motion, want_grad ? &pg : nullptr);
  }
  const auto count = static_cast<double>(atoms.size());
  TargetEval out;
  out.infidelity = sum / count;
  if (want_grad) {
    for (auto& g : pg) {
      for (double& x : g) {
        x = -x / count;  // d(infidelity) = -dF
      }
    }
    const Eigen::VectorXd gz = pulse_to_raw_grad(net, z, jets, pg);
    out.grad = Eigen::VectorXd::Zero(net.mlp.parameter_count());
    net.mlp.backward(tape, net.head_scale * gz, out.grad);
  }
  return out;
}

LossGradient evaluate_batch(const PulseNet& net, const std::vector<TargetPoint>& targets,
                            const std::vector<AtomSample>& atoms, const MotionContext& motion,
                            int m, int m_max, bool want_grad) {
  if (targets.empty() || atoms.empty()) {
    throw ConfigError("batch needs at least one target and one atom");
  }
  std::vector<TargetEval> evals(targets.size());
  parallel_for(targets.size(), [&](std::size_t i) {
    evals[i] = evaluate_target(net, targets[i], atoms, motion, m, m_max, want_grad);
  });
  LossGradient out;
  const auto count = static_cast<double>(targets.size());
  if (want_grad) {
    out.grad = Eigen::VectorXd::Zero(net.mlp.parameter_count());
  }
  for (const auto& e : evals) {
    out.loss += e.infidelity;
    if (want_grad) {
      out.grad += e.grad;
    }
  }
  out.loss /= count;
  if (want_grad) {
    out.grad /= count;
  }
  return out;
}

}  // namespace

std::string to_string(Baseline b) { return b == Baseline::kSk1 ? "sk1" : "bb1"; }

Baseline baseline_from_string(const std::string& s) {
  if (s == "sk1") {
    return Baseline::kSk1;
  }
  if (s == "bb1") {
    return Baseline::kBb1;
  }
  throw ConfigError("unknown baseline '" + s + "' (expected sk1 or bb1)");
}

int baseline_pulses(Baseline b) { return b == Baseline::kSk1 ? 3 : 4; }

CompositePulse rotated_baseline(Baseline b, double area, double theta,
                                const HardwareLimits& lim) {
  const CompositePulse cp = b == Baseline::kSk1 ? sk1(area, 0.0, lim) : bb1(area, 0.0, lim);
  return rotate_cp(cp, theta, lim);
}

TargetBox TargetBox::reference() { return {kPi / 4.0, kPi, kPi / 5.0, 4.0 * kPi / 5.0}; }

Eigen::Vector2d TargetBox::normalize(double area, double theta) const {
  return {2.0 * (area - area_min) / (area_max - area_min) - 1.0,
          2.0 * (theta - theta_min) / (theta_max - theta_min) - 1.0};
}

bool TargetBox::contains(double area, double theta) const {
  return area >= area_min && area <= area_max && theta >= theta_min && theta <= theta_max;
}

TrainConfig TrainConfig::full() { return TrainConfig{}; }

TrainConfig TrainConfig::desk() {
  TrainConfig cfg;
  cfg.epochs = 500;
  cfg.patience = 500;
  cfg.batch_size = 8;
  cfg.lr0 = 1e-3;
  cfg.grid_area = 8;
  cfg.grid_theta = 4;
  cfg.train_atoms = 32;
  cfg.val_targets = 16;
  cfg.val_atoms = 16;
  return cfg;
}

void TrainConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) {
      throw ConfigError(what);
    }
  };
  require(n_pulses == baseline_pulses(baseline), "n_pulses must match the baseline (sk1: 3, bb1: 4)");
  require(hidden_width > 0 && hidden_layers > 0, "network size must be positive");
  require(epochs > 0 && batch_size > 0 && patience > 0, "epochs, batch size and patience must be positive");
  require(patience <= epochs, "patience must not exceed the epoch budget");
  require(lr0 > 0.0 && decay_every > 0 && cosine_period > 0, "learning-rate schedule must be positive");
  require(m_segments > 0 && m_max >= m_segments, "segment counts must satisfy 0 < m <= m_max");
  require(grid_area > 0 && grid_theta > 0 && train_atoms > 0 && val_targets > 0 && val_atoms > 0,
          "dataset sizes must be positive");
  require(box.area_max > box.area_min && box.theta_max > box.theta_min, "empty target box");
  require(limits.omega_max > 0.0 && limits.delta_max > 0.0, "hardware limits must be positive");
  require(limits.chi_min > 0.0 && limits.chi_min < limits.chi_max && limits.chi_max <= 1.0,
          "chi limits must satisfy 0 < chi_min < chi_max <= 1");
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

Datasets make_datasets(const TrainConfig& cfg, std::mt19937_64& rng) {
  const TargetBox& box = cfg.box;
  Datasets d;
  const auto areas = linspace(box.area_min, box.area_max, cfg.grid_area);
  const auto thetas = linspace(box.theta_min, box.theta_max, cfg.grid_theta);
  for (double a : areas) {
    for (double t : thetas) {
      d.train.targets.push_back({a, t});
    }
  }
  const double step_a = cfg.grid_area > 1 ? (box.area_max - box.area_min) / (cfg.grid_area - 1)
                                          : box.area_max - box.area_min;
  const double step_t = cfg.grid_theta > 1
                            ? (box.theta_max - box.theta_min) / (cfg.grid_theta - 1)
                            : box.theta_max - box.theta_min;
  std::uniform_real_distribution<double> ua(box.area_min, box.area_max);
  std::uniform_real_distribution<double> ut(box.theta_min, box.theta_max);
  while (static_cast<int>(d.validation.targets.size()) < cfg.val_targets) {
    const TargetPoint p{ua(rng), ut(rng)};
    const bool far = std::all_of(d.train.targets.begin(), d.train.targets.end(), [&](const auto& q) {
      return std::hypot((p.area - q.area) / step_a, (p.theta - q.theta) / step_t) >= 0.5;
    });
    if (far) {
      d.validation.targets.push_back(p);
    }
  }
  d.train.atoms = sample_thermal(cfg.motion.trap, rng, static_cast<std::size_t>(cfg.train_atoms));
  d.validation.atoms =
      sample_thermal(cfg.motion.trap, rng, static_cast<std::size_t>(cfg.val_atoms));
  return d;
}

Eigen::VectorXd PulseNet::baseline_raw(double area, double theta) const {
  const CompositePulse cp = rotated_baseline(baseline, area, theta, limits);
  Eigen::VectorXd z(4 * n_pulses);
  const double chi_top = limits.chi_max - kChiMargin * (limits.chi_max - limits.chi_min);
  for (int k = 0; k < n_pulses; ++k) {
    const RotationParams p = pulse_to_rotation(cp.pulses[static_cast<std::size_t>(k)]);
    const double chi = std::clamp(rotation_chi(p, limits), limits.chi_min, chi_top);
    z[4 * k] = logit(p.area / (4.0 * kPi));
    z[4 * k + 1] = logit((chi - limits.chi_min) / (limits.chi_max - limits.chi_min));
    z[4 * k + 2] = logit(p.theta / kPi);
    z[4 * k + 3] = p.phi;
  }
  return z;
}

Eigen::VectorXd PulseNet::raw(double area, double theta, Mlp::Tape* tape) const {
  return baseline_raw(area, theta) + head_scale * mlp.forward(box.normalize(area, theta), tape);
}

PulseNet init_network(const TrainConfig& cfg, std::mt19937_64& rng) {
  cfg.validate();
  std::vector<int> sizes{2};
  for (int i = 0; i < cfg.hidden_layers; ++i) {
    sizes.push_back(cfg.hidden_width);
  }
  sizes.push_back(4 * cfg.n_pulses);
  PulseNet net;
  net.mlp = Mlp(sizes);
  net.mlp.init_uniform(rng);
  net.n_pulses = cfg.n_pulses;
  net.baseline = cfg.baseline;
  net.head_scale = cfg.head_scale;
  net.box = cfg.box;
  net.limits = cfg.limits;
  return net;
}

std::vector<RotationParams> forward(const PulseNet& net, double area, double theta) {
  std::vector<RotationParams> out;
  for (const auto& j : decode(net, net.raw(area, theta))) {
    out.push_back({j.area, j.chi * j.w.norm(), j.theta, j.phi});
  }
  return out;
}

std::vector<double> forward_chi(const PulseNet& net, double area, double theta) {
  std::vector<double> out;
  for (const auto& j : decode(net, net.raw(area, theta))) {
    out.push_back(j.chi);
  }
  return out;
}

CompositePulse compile(const PulseNet& net, const TargetRotation& target) {
  if (!net.box.contains(target.area, target.theta)) {
    spdlog::warn("target (A = {:.4f}, theta = {:.4f}) lies outside the training range",
                 target.area, target.theta);
  }
  return apply_global_phase(to_cp(decode(net, net.raw(target.area, target.theta))), target.phi);
}

SegmentGrid refine_grid(const CompositePulse& cp, int m, int m_max) {
  for (int mm = m;; mm *= 2) {
    try {
      return align_segments(cp, mm);
    } catch (const AmbiguousMapping&) {
      if (mm * 2 > m_max) {
        throw;
      }
      spdlog::debug("pulse times collide at m = {}, refining", mm);
    }
  }
}

double batch_loss(const PulseNet& net, const std::vector<TargetPoint>& targets,
                  const std::vector<AtomSample>& atoms, const MotionContext& motion, int m,
                  int m_max) {
  return evaluate_batch(net, targets, atoms, motion, m, m_max, false).loss;
}

LossGradient gradient(const PulseNet& net, const std::vector<TargetPoint>& targets,
                      const std::vector<AtomSample>& atoms, const MotionContext& motion, int m,
                      int m_max) {
  return evaluate_batch(net, targets, atoms, motion, m, m_max, true);
}

namespace {

// Central differences on a few weights of the first batch; logs the worst
// relative error.
void audit_gradient(const PulseNet& net, const std::vector<TargetPoint>& batch,
                    const std::vector<AtomSample>& atoms, const TrainConfig& cfg,
                    const Eigen::VectorXd& grad, std::mt19937_64& rng) {
  constexpr int kProbes = 3;
  constexpr double kStep = 1e-6;
  std::uniform_int_distribution<Eigen::Index> pick(0, net.mlp.parameter_count() - 1);
  double worst = 0.0;
  for (int i = 0; i < kProbes; ++i) {
    const Eigen::Index w = pick(rng);
    PulseNet probe = net;
    probe.mlp.parameters()[w] += kStep;
    const double up = batch_loss(probe, batch, atoms, cfg.motion, cfg.m_segments, cfg.m_max);
    probe.mlp.parameters()[w] -= 2.0 * kStep;
    const double down = batch_loss(probe, batch, atoms, cfg.motion, cfg.m_segments, cfg.m_max);
    const double fd = (up - down) / (2.0 * kStep);
    const double scale = std::max(std::abs(fd), std::abs(grad[w]));
    if (scale > 1e-9) {
      worst = std::max(worst, std::abs(fd - grad[w]) / scale);
    }
  }
  if (worst > 1e-4) {
    spdlog::warn("gradient audit: relative error {:.3g} on the first batch", worst);
  } else {
    spdlog::debug("gradient audit: relative error {:.3g}", worst);
  }
}

}  // namespace

TrainResult train(const TrainConfig& cfg, const Datasets& data, const EpochCallback& on_epoch) {
  cfg.validate();
  std::mt19937_64 init_rng = stream_rng(cfg.seed, 1);
  std::mt19937_64 shuffle_rng = stream_rng(cfg.seed, 2);
  std::mt19937_64 audit_rng = stream_rng(cfg.seed, 3);

  TrainResult result;
  PulseNet net = init_network(cfg, init_rng);
  auto validate = [&](const PulseNet& n) {
    return 1.0 - batch_loss(n, data.validation.targets, data.validation.atoms, cfg.motion,
                            cfg.m_segments, cfg.m_max);
  };
  result.initial_val_fidelity = validate(net);
  Checkpoint& best = result.checkpoint;
  best.net = net;
  best.config = cfg;
  best.best_val_fidelity = result.initial_val_fidelity;
  best.best_epoch = -1;
  spdlog::info("initial validation infidelity {:.4e}", 1.0 - result.initial_val_fidelity);

  Adam adam(net.mlp.parameter_count());
  std::vector<std::size_t> order(data.train.targets.size());
  std::iota(order.begin(), order.end(), 0);
  const auto batch = static_cast<std::size_t>(cfg.batch_size);
  bool audited = false;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double lr = learning_rate(epoch, cfg.lr0, cfg.decay_every, cfg.cosine_period);
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double loss_sum = 0.0;
    int batches = 0;
    for (std::size_t b = 0; b < order.size(); b += batch) {
      std::vector<TargetPoint> targets;
      for (std::size_t i = b; i < std::min(order.size(), b + batch); ++i) {
        targets.push_back(data.train.targets[order[i]]);
      }
      const LossGradient lg =
          gradient(net, targets, data.train.atoms, cfg.motion, cfg.m_segments, cfg.m_max);
      if (!std::isfinite(lg.loss) || !lg.grad.allFinite()) {
        throw Diverged("training loss became non-finite at epoch " + std::to_string(epoch));
      }
      if (!audited) {
        audit_gradient(net, targets, data.train.atoms, cfg, lg.grad, audit_rng);
        audited = true;
      }
      adam.step(net.mlp.parameters(), lg.grad, lr);
      loss_sum += lg.loss;
      ++batches;
    }
    EpochRecord rec{epoch, lr, loss_sum / batches, validate(net)};
    if (!std::isfinite(rec.val_fidelity)) {
      throw Diverged("validation fidelity became non-finite at epoch " + std::to_string(epoch));
    }
    result.curve.push_back(rec);
    best.epochs_run = epoch + 1;
    if (rec.val_fidelity > best.best_val_fidelity) {
      best.net = net;
      best.best_val_fidelity = rec.val_fidelity;
      best.best_epoch = epoch;
    }
    if (on_epoch) {
      on_epoch(rec);
    }
    if (epoch - best.best_epoch >= cfg.patience) {
      spdlog::info("early stop at epoch {}: no improvement since epoch {}", epoch,
                   best.best_epoch);
      break;
    }
  }
  spdlog::info("best validation infidelity {:.4e} at epoch {}", 1.0 - best.best_val_fidelity,
               best.best_epoch);
  return result;
}

}  // namespace tweezercp
