// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "tweezercp/schedule.hpp"

#include <cmath>
#include <numbers>

namespace tweezercp {

double learning_rate(int epoch, double lr0, int decay_every, int period) {
  const double decay = std::pow(10.0, -static_cast<double>(epoch / decay_every));
  const double phase = static_cast<double>(epoch % period) / period;
  return lr0 * decay * 0.5 * (1.0 + std::cos(std::numbers::pi * phase));
}

Adam::Adam(Eigen::Index n, double beta1, double beta2, double eps)
    : beta1_(beta1),
      beta2_(beta2),
      eps_(eps),
      m_(Eigen::VectorXd::Zero(n)),
      v_(Eigen::VectorXd::Zero(n)) {}

void Adam::step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, double lr) {
  ++t_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseAbs2();
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  params.array() -= lr * (m_.array() / c1) / ((v_.array() / c2).sqrt() + eps_);
}

}  // namespace tweezercp
