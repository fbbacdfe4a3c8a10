// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tweezercp/evolve.hpp"
#include "tweezercp/mlp.hpp"
#include "tweezercp/motion.hpp"
#include "tweezercp/pulses.hpp"
#include "tweezercp/su2.hpp"

namespace tweezercp {

enum class Baseline { kSk1, kBb1 };

std::string to_string(Baseline b);
Baseline baseline_from_string(const std::string& s);
int baseline_pulses(Baseline b);

/// Conventional sequence for the target, axis rotated onto theta_tg.
CompositePulse rotated_baseline(Baseline b, double area, double theta, const HardwareLimits& lim);

/// Training range of (A_tg, theta_tg).
struct TargetBox {
  double area_min = 0.0;
  double area_max = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;

  static TargetBox reference();
  /// Affine map of the box onto [-1, 1]^2.
  Eigen::Vector2d normalize(double area, double theta) const;
  bool contains(double area, double theta) const;
};

struct TargetPoint {
  double area = 0.0;
  double theta = 0.0;
};

struct TrainConfig {
  int n_pulses = 3;
  Baseline baseline = Baseline::kSk1;
  int hidden_width = 128;
  int hidden_layers = 6;
  double head_scale = 0.25;

  int epochs = 10000;
  int batch_size = 32;
  double lr0 = 0.002;
  int decay_every = 2000;
  int cosine_period = 200;
  int patience = 1000;
  int m_segments = 20;
  int m_max = 640;

  int grid_area = 48;
  int grid_theta = 32;
  int train_atoms = 128;
  int val_targets = 128;
  int val_atoms = 64;

  std::uint64_t seed = 0;
  TargetBox box = TargetBox::reference();
  HardwareLimits limits = HardwareLimits::reference();
  MotionContext motion = MotionContext::reference();

  static TrainConfig full();
  static TrainConfig desk();

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

struct Dataset {
  std::vector<TargetPoint> targets;
  std::vector<AtomSample> atoms;
};

struct Datasets {
  Dataset train;
  Dataset validation;
};

/// Independent generator for one named purpose under a run seed.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream);

/// Training targets on the uniform grid, validation targets drawn uniformly
/// in the box at least half a grid step (in grid units) from every training
/// point, then training and validation atoms.
Datasets make_datasets(const TrainConfig& cfg, std::mt19937_64& rng);

/// The pulse-compiling network together with everything its outputs mean.
///
/// Raw head z = baseline_raw(A, theta) + head_scale * mlp(x), mapped per pulse
/// onto A = 4 pi s(z0), chi = chi_min + (chi_max - chi_min) s(z1),
/// theta = pi s(z2), phi = z3, where s is the logistic function.
struct PulseNet {
  Mlp mlp;
  int n_pulses = 3;
  Baseline baseline = Baseline::kSk1;
  double head_scale = 0.25;
  TargetBox box;
  HardwareLimits limits;

  /// Rotated-baseline parameters expressed in raw head units.
  Eigen::VectorXd baseline_raw(double area, double theta) const;
  Eigen::VectorXd raw(double area, double theta, Mlp::Tape* tape = nullptr) const;
};

PulseNet init_network(const TrainConfig& cfg, std::mt19937_64& rng);

/// Per-pulse rotation parameters emitted for a target.
std::vector<RotationParams> forward(const PulseNet& net, double area, double theta);

/// Per-pulse chi emitted for a target.
std::vector<double> forward_chi(const PulseNet& net, double area, double theta);

CompositePulse compile(const PulseNet& net, const TargetRotation& target);

/// Grid for the sequence at m segments, doubling m up to m_max while pulse
/// times collide.
SegmentGrid refine_grid(const CompositePulse& cp, int m, int m_max);

struct LossGradient {
  double loss = 0.0;
  Eigen::VectorXd grad;
};

/// 1 - mean fidelity over every (target, atom) pair.
double batch_loss(const PulseNet& net, const std::vector<TargetPoint>& targets,
                  const std::vector<AtomSample>& atoms, const MotionContext& motion, int m,
                  int m_max = 640);

/// batch_loss and its exact derivative with respect to the network weights.
LossGradient gradient(const PulseNet& net, const std::vector<TargetPoint>& targets,
                      const std::vector<AtomSample>& atoms, const MotionContext& motion, int m,
                      int m_max = 640);

struct EpochRecord {
  int epoch = 0;
  double lr = 0.0;
  double train_loss = 0.0;
  double val_fidelity = 0.0;
};

struct Checkpoint {
  static constexpr int kFormatVersion = 1;

  PulseNet net;
  TrainConfig config;
  double best_val_fidelity = 0.0;
  int best_epoch = -1;  // -1: the initial network
  int epochs_run = 0;
};

struct TrainResult {
  Checkpoint checkpoint;
  double initial_val_fidelity = 0.0;
  std::vector<EpochRecord> curve;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Adam on mini-batches with the cosine-restart schedule, validation after
/// every epoch, early stopping on patience. Returns the best network seen,
/// counting the initial one. Throws Diverged on a non-finite loss.
TrainResult train(const TrainConfig& cfg, const Datasets& data, const EpochCallback& on_epoch = {});

}  // namespace tweezercp
