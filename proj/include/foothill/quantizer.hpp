/* Copyright 2026 The Foothill Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Binary quantization with shifted penalties.
//
// A shifted penalty q(x - mu * sign(x)) vanishes at x = +/- mu and pulls
// weights toward mu * {-1, +1}. Three bases are provided: the foothill
// penalty and the modified L1 / L2 baselines ||x| - mu| and (|x| - mu)^2.
// sign(0) is +1 everywhere in this module.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "foothill/penalty.hpp"

namespace foothill {

enum class PenaltyKind { kFoothill, kModL1, kModL2 };

std::string_view to_string(PenaltyKind kind);
// Accepts "foothill", "mod_l1", "mod_l2".
PenaltyKind parse_penalty_kind(std::string_view name);

struct ShiftedPenalty {
  PenaltyKind kind;
  // Only read for kFoothill.
  PenaltyParams params;

  static ShiftedPenalty foothill(const PenaltyParams& params) {
    return {PenaltyKind::kFoothill, params};
  }
  static ShiftedPenalty mod_l1() { return {PenaltyKind::kModL1, {1.0, 2.0}}; }
  static ShiftedPenalty mod_l2() { return {PenaltyKind::kModL2, {1.0, 2.0}}; }
};

struct ShiftedGrad {
  double d_dx;
  double d_dmu;
};

inline double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// Throw ArgumentError unless mu > 0.
double shifted_eval(const ShiftedPenalty& pen, double x, double mu);
// mod_l1 takes the zero subgradient at its kinks x = +/- mu.
ShiftedGrad shifted_grad(const ShiftedPenalty& pen, double x, double mu);

// lambda(t) = base * log(t + 1), t = 0-based epoch. lambda(0) = 0.
double lambda_schedule(double lambda_base, int epoch);

inline constexpr double kMuFloor = 1e-4;

struct DenseLayer {
  Eigen::MatrixXd W;   // out x in, latent real weights
  Eigen::VectorXd b;   // out
  Eigen::VectorXd mu;  // out, per-neuron scaling factor
  bool binarized = false;
};

// Multilayer perceptron with sign activations on hidden layers and identity
// on the output. Every layer except the first and the last is binarized.
struct QuantNet {
  std::vector<DenseLayer> layers;

  int input_size() const { return static_cast<int>(layers.front().W.cols()); }
  int output_size() const { return static_cast<int>(layers.back().W.rows()); }
};

// sizes = {inputs, hidden..., outputs}. Weights ~ U(-1/sqrt(fan_in),
// 1/sqrt(fan_in)), zero biases, mu = mean |W| over each row.
QuantNet make_quant_net(std::span<const int> sizes, std::uint64_t seed);

// ArgumentError on broken shapes or non-positive mu.
void validate(const QuantNet& net);

// Binarized layers either run as trained (mu * (sign(W) sign(input))) or with
// the raw latent weights (W sign(input)).
enum class WeightMode { kBinary, kLatent };

// features: n x p. Returns n x classes logits.
Eigen::MatrixXd forward(const QuantNet& net, const Eigen::MatrixXd& features,
                        WeightMode mode);

struct Dataset {
  Eigen::MatrixXd features;  // n x p
  std::vector<int> labels;   // n, in [0, num_classes)
  int num_classes = 0;
};

void validate(const Dataset& data);

double accuracy(const QuantNet& net, const Dataset& data, WeightMode mode);

// Fraction of binarized-layer weights with
// min(|w - mu_i|, |w + mu_i|) < 0.1 * mu_i. Zero for nets without binarized
// layers.
double concentration(const QuantNet& net);

// Copy of `net` with every binarized weight replaced by mu_i * sign(w_ij).
QuantNet binarize_snapshot(const QuantNet& net);

// Two isotropic unit-variance Gaussian classes in `dims` dimensions whose
// means are `separation` apart. Labels alternate 0, 1, 0, ...
Dataset make_two_gaussians(int n_points, double separation, int dims,
                           std::uint64_t seed);

struct TrainConfig {
  int epochs = 100;
  int batch_size = 32;
  double learning_rate = 0.05;
  double lambda_base = 0.01;
  std::uint64_t seed = 1;
  ShiftedPenalty penalty = ShiftedPenalty::foothill({0.5, 50.0});
};

void validate(const TrainConfig& cfg);

struct QuantReport {
  std::vector<double> lambda;          // per epoch
  std::vector<double> loss;            // per epoch, mean data loss
  std::vector<double> train_accuracy;  // per epoch, binary forward
  std::vector<double> concentration;   // per epoch
  // One entry per binarized layer.
  std::vector<int> mu_layers;
  std::vector<Eigen::VectorXd> final_mu;
  // After the last epoch.
  double latent_accuracy = 0.0;
  double quantized_accuracy = 0.0;
};

// Minibatch SGD on cross-entropy plus lambda(t) * sum of the shifted penalty
// over binarized-layer weights. Gradients pass through sign via the
// straight-through estimator, zeroed where the pre-sign value exceeds 1 in
// magnitude. Trains `net` in place. Throws NumericalError (naming the epoch)
// if the loss goes non-finite.
QuantReport train(const Dataset& data, QuantNet& net, const TrainConfig& cfg);

}  // namespace foothill
