// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#include "tweezercp/mlp.hpp"

#include <cmath>

#include "tweezercp/errors.hpp"

namespace tweezercp {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double elu(double x) { return x > 0.0 ? x : std::expm1(x); }
double elu_prime(double x) { return x > 0.0 ? 1.0 : std::exp(x); }

}  // namespace

Mlp::Mlp(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.size() < 2) {
    throw ConfigError("network needs at least an input and an output layer");
  }
  Eigen::Index n = 0;
  for (int l = 0; l < layers(); ++l) {
    offsets_.push_back(n);
    n += static_cast<Eigen::Index>(sizes_[static_cast<std::size_t>(l)] + 1) *
         sizes_[static_cast<std::size_t>(l) + 1];
  }
  params_ = Eigen::VectorXd::Zero(n);
}

void Mlp::init_uniform(std::mt19937_64& rng) {
  for (int l = 0; l < layers(); ++l) {
    const int in = sizes_[static_cast<std::size_t>(l)];
    const int out = sizes_[static_cast<std::size_t>(l) + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    const Eigen::Index count = static_cast<Eigen::Index>(in + 1) * out;
    for (Eigen::Index i = 0; i < count; ++i) {
      params_[offset(l) + i] = dist(rng);
    }
  }
}

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& x, Tape* tape) const {
  if (tape != nullptr) {
    tape->input.clear();
    tape->pre.clear();
  }
  Eigen::VectorXd a = x;
  for (int l = 0; l < layers(); ++l) {
    const int in = sizes_[static_cast<std::size_t>(l)];
    const int out = sizes_[static_cast<std::size_t>(l) + 1];
    const Eigen::Map<const RowMajor> w(params_.data() + offset(l), out, in);
    const Eigen::Map<const Eigen::VectorXd> b(params_.data() + offset(l) + in * out, out);
    Eigen::VectorXd z = w * a + b;
    if (tape != nullptr) {
      tape->input.push_back(a);
      tape->pre.push_back(z);
    }
    if (l + 1 < layers()) {
      a = z.unaryExpr(&elu);
    } else {
      a = std::move(z);
    }
  }
  return a;
}

void Mlp::backward(const Tape& tape, const Eigen::VectorXd& grad_out,
                   Eigen::VectorXd& grad) const {
  Eigen::VectorXd g = grad_out;
  for (int l = layers() - 1; l >= 0; --l) {
    const int in = sizes_[static_cast<std::size_t>(l)];
    const int out = sizes_[static_cast<std::size_t>(l) + 1];
    const auto ul = static_cast<std::size_t>(l);
    if (l + 1 < layers()) {
      g = g.cwiseProduct(tape.pre[ul].unaryExpr(&elu_prime));
    }
    Eigen::Map<RowMajor> gw(grad.data() + offset(l), out, in);
    Eigen::Map<Eigen::VectorXd> gb(grad.data() + offset(l) + in * out, out);
    gw.noalias() += g * tape.input[ul].transpose();
    gb += g;
    if (l > 0) {
      const Eigen::Map<const RowMajor> w(params_.data() + offset(l), out, in);
      g = w.transpose() * g;
    }
  }
}

}  // namespace tweezercp
