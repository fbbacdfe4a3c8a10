// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tweezercp Authors.

#pragma once

#include <random>
#include <vector>

#include <Eigen/Core>

namespace tweezercp {

/// Fully connected network with ELU on every hidden layer and a linear
/// output layer. All weights live in one flat vector: per layer, the
/// row-major (out x in) weight matrix followed by the bias.
class Mlp {
 public:
  /// Activations kept by forward() for backward().
  struct Tape {
    std::vector<Eigen::VectorXd> input;  // input to each layer
    std::vector<Eigen::VectorXd> pre;    // pre-activation of each layer
  };

  Mlp() = default;
  explicit Mlp(std::vector<int> sizes);

  const std::vector<int>& sizes() const { return sizes_; }
  int layers() const { return static_cast<int>(sizes_.size()) - 1; }
  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  Eigen::Index parameter_count() const { return params_.size(); }

  Eigen::VectorXd& parameters() { return params_; }
  const Eigen::VectorXd& parameters() const { return params_; }

  /// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) for weights and biases.
  void init_uniform(std::mt19937_64& rng);

  Eigen::VectorXd forward(const Eigen::VectorXd& x, Tape* tape = nullptr) const;

  /// Adds d(loss)/d(params) to grad given d(loss)/d(output).
  void backward(const Tape& tape, const Eigen::VectorXd& grad_out, Eigen::VectorXd& grad) const;

 private:
  Eigen::Index offset(int layer) const { return offsets_[static_cast<std::size_t>(layer)]; }

  std::vector<int> sizes_;
  std::vector<Eigen::Index> offsets_;
  Eigen::VectorXd params_;
};

}  // namespace tweezercp
