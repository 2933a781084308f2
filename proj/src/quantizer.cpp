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

#include "foothill/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "foothill/errors.hpp"

namespace foothill {
namespace {

void require_positive_mu(double mu) {
  if (!(std::isfinite(mu) && mu > 0.0)) {
    throw ArgumentError("shifted penalty: mu must be positive and finite");
  }
}

// Base penalty and its derivative, evaluated at the shifted argument.
double base_value(const ShiftedPenalty& pen, double u) {
  switch (pen.kind) {
    case PenaltyKind::kFoothill:
      return eval(pen.params, u);
    case PenaltyKind::kModL1:
      return std::abs(u);
    case PenaltyKind::kModL2:
      return u * u;
  }
  return 0.0;
}

double base_slope(const ShiftedPenalty& pen, double u) {
  switch (pen.kind) {
    case PenaltyKind::kFoothill:
      return grad(pen.params, u);
    case PenaltyKind::kModL1:
      return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
    case PenaltyKind::kModL2:
      return 2.0 * u;
  }
  return 0.0;
}

Eigen::MatrixXd sign_matrix(const Eigen::MatrixXd& m) {
  return m.unaryExpr([](double v) { return sign_of(v); });
}

// 1 where |v| <= 1, else 0.
Eigen::MatrixXd ste_mask(const Eigen::MatrixXd& m) {
  return m.unaryExpr([](double v) { return std::abs(v) <= 1.0 ? 1.0 : 0.0; });
}

// Column-major activations: features x batch.
struct LayerCache {
  Eigen::MatrixXd input;
  Eigen::MatrixXd signed_weights;  // binarized layers only
  Eigen::MatrixXd binary_product;  // sign(W) * input, binarized layers only
  Eigen::MatrixXd pre;
};

Eigen::MatrixXd layer_pre(const DenseLayer& layer, const Eigen::MatrixXd& in,
                          WeightMode mode, LayerCache* cache) {
  Eigen::MatrixXd pre;
  if (layer.binarized && mode == WeightMode::kBinary) {
    Eigen::MatrixXd sw = sign_matrix(layer.W);
    Eigen::MatrixXd z = sw * in;
    pre = layer.mu.asDiagonal() * z;
    if (cache != nullptr) {
      cache->signed_weights = std::move(sw);
      cache->binary_product = std::move(z);
    }
  } else {
    pre = layer.W * in;
  }
  pre.colwise() += layer.b;
  return pre;
}

// Runs the network on columns of `in`; fills caches when given.
Eigen::MatrixXd run(const QuantNet& net, Eigen::MatrixXd in, WeightMode mode,
                    std::vector<LayerCache>* caches) {
  const std::size_t last = net.layers.size() - 1;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    LayerCache* cache = caches != nullptr ? &(*caches)[l] : nullptr;
    Eigen::MatrixXd pre = layer_pre(net.layers[l], in, mode, cache);
    Eigen::MatrixXd out = l == last ? pre : sign_matrix(pre);
    if (cache != nullptr) {
      cache->input = std::move(in);
      cache->pre = std::move(pre);
    }
    in = std::move(out);
  }
  return in;
}

// Softmax over columns.
Eigen::MatrixXd softmax(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd p = logits;
  for (Eigen::Index c = 0; c < p.cols(); ++c) {
    const double m = p.col(c).maxCoeff();
    p.col(c) = (p.col(c).array() - m).exp();
    p.col(c) /= p.col(c).sum();
  }
  return p;
}

double penalty_total(const QuantNet& net, const ShiftedPenalty& pen) {
  double total = 0.0;
  for (const auto& layer : net.layers) {
    if (!layer.binarized) continue;
    for (Eigen::Index i = 0; i < layer.W.rows(); ++i) {
      for (Eigen::Index j = 0; j < layer.W.cols(); ++j) {
        total += shifted_eval(pen, layer.W(i, j), layer.mu[i]);
      }
    }
  }
  return total;
}

}  // namespace

std::string_view to_string(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::kFoothill:
      return "foothill";
    case PenaltyKind::kModL1:
      return "mod_l1";
    case PenaltyKind::kModL2:
      return "mod_l2";
  }
  return "unknown";
}

PenaltyKind parse_penalty_kind(std::string_view name) {
  if (name == "foothill") return PenaltyKind::kFoothill;
  if (name == "mod_l1") return PenaltyKind::kModL1;
  if (name == "mod_l2") return PenaltyKind::kModL2;
  throw ArgumentError("unknown penalty kind '" + std::string(name) + "'");
}

double shifted_eval(const ShiftedPenalty& pen, double x, double mu) {
  require_positive_mu(mu);
  if (!std::isfinite(x)) throw DomainError("shifted_eval: x must be finite");
  return base_value(pen, x - mu * sign_of(x));
}

ShiftedGrad shifted_grad(const ShiftedPenalty& pen, double x, double mu) {
  require_positive_mu(mu);
  if (!std::isfinite(x)) throw DomainError("shifted_grad: x must be finite");
  const double s = sign_of(x);
  const double slope = base_slope(pen, x - mu * s);
  return {slope, -s * slope};
}

double lambda_schedule(double lambda_base, int epoch) {
  if (epoch < 0) throw ArgumentError("lambda_schedule: epoch must be >= 0");
  return lambda_base * std::log(static_cast<double>(epoch) + 1.0);
}

QuantNet make_quant_net(std::span<const int> sizes, std::uint64_t seed) {
  if (sizes.size() < 2) {
    throw ArgumentError("make_quant_net: need input and output sizes");
  }
  for (int s : sizes) {
    if (s < 1) throw ArgumentError("make_quant_net: layer sizes must be >= 1");
  }
  std::mt19937_64 rng(seed);
  QuantNet net;
  const std::size_t count = sizes.size() - 1;
  for (std::size_t l = 0; l < count; ++l) {
    const int in = sizes[l];
    const int out = sizes[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    std::uniform_real_distribution<double> uniform(-bound, bound);
    DenseLayer layer;
    layer.W.resize(out, in);
    for (Eigen::Index i = 0; i < out; ++i) {
      for (Eigen::Index j = 0; j < in; ++j) layer.W(i, j) = uniform(rng);
    }
    layer.b = Eigen::VectorXd::Zero(out);
    layer.binarized = l != 0 && l + 1 != count;
    if (layer.binarized) {
      layer.mu = layer.W.cwiseAbs().rowwise().mean();
      layer.mu = layer.mu.cwiseMax(kMuFloor);
    } else {
      layer.mu = Eigen::VectorXd::Ones(out);
    }
    net.layers.push_back(std::move(layer));
  }
  return net;
}

void validate(const QuantNet& net) {
  if (net.layers.empty()) throw ArgumentError("QuantNet: no layers");
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const auto& layer = net.layers[l];
    if (layer.W.rows() < 1 || layer.W.cols() < 1 ||
        layer.b.size() != layer.W.rows() ||
        layer.mu.size() != layer.W.rows()) {
      throw ArgumentError("QuantNet: inconsistent shapes in layer " +
                          std::to_string(l));
    }
    if (l > 0 && layer.W.cols() != net.layers[l - 1].W.rows()) {
      throw ArgumentError("QuantNet: layer " + std::to_string(l) +
                          " does not match the previous layer's width");
    }
    if (layer.binarized && (l == 0 || l + 1 == net.layers.size())) {
      throw ArgumentError("QuantNet: first and last layers stay full precision");
    }
    if ((layer.mu.array() <= 0.0).any()) {
      throw ArgumentError("QuantNet: mu must be positive");
    }
  }
}

Eigen::MatrixXd forward(const QuantNet& net, const Eigen::MatrixXd& features,
                        WeightMode mode) {
  validate(net);
  if (features.cols() != net.input_size()) {
    throw ArgumentError("forward: feature width does not match the network");
  }
  return run(net, features.transpose(), mode, nullptr).transpose();
}

void validate(const Dataset& data) {
  if (data.features.rows() < 1 || data.features.cols() < 1) {
    throw ArgumentError("dataset: empty");
  }
  if (static_cast<Eigen::Index>(data.labels.size()) != data.features.rows()) {
    throw ArgumentError("dataset: label count does not match rows");
  }
  if (data.num_classes < 2) throw ArgumentError("dataset: need >= 2 classes");
  for (int label : data.labels) {
    if (label < 0 || label >= data.num_classes) {
      throw ArgumentError("dataset: label out of range");
    }
  }
  if (!data.features.allFinite()) throw DomainError("dataset: non-finite features");
}

double accuracy(const QuantNet& net, const Dataset& data, WeightMode mode) {
  const Eigen::MatrixXd logits = forward(net, data.features, mode);
  int correct = 0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    Eigen::Index best = 0;
    logits.row(i).maxCoeff(&best);
    if (best == data.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(logits.rows());
}

double concentration(const QuantNet& net) {
  long total = 0;
  long close = 0;
  for (const auto& layer : net.layers) {
    if (!layer.binarized) continue;
    for (Eigen::Index i = 0; i < layer.W.rows(); ++i) {
      const double mu = layer.mu[i];
      for (Eigen::Index j = 0; j < layer.W.cols(); ++j) {
        const double w = layer.W(i, j);
        if (std::min(std::abs(w - mu), std::abs(w + mu)) < 0.1 * mu) ++close;
        ++total;
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(close) / total;
}

QuantNet binarize_snapshot(const QuantNet& net) {
  QuantNet out = net;
  for (auto& layer : out.layers) {
    if (!layer.binarized) continue;
    layer.W = layer.mu.asDiagonal() * sign_matrix(layer.W);
  }
  return out;
}

Dataset make_two_gaussians(int n_points, double separation, int dims,
                           std::uint64_t seed) {
  if (n_points < 2 || dims < 1) {
    throw ArgumentError("make_two_gaussians: need >= 2 points and >= 1 dim");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double offset = 0.5 * separation / std::sqrt(static_cast<double>(dims));
  Dataset data;
  data.num_classes = 2;
  data.features.resize(n_points, dims);
  data.labels.resize(n_points);
  for (int i = 0; i < n_points; ++i) {
    const int label = i % 2;
    const double centre = label == 0 ? -offset : offset;
    data.labels[i] = label;
    for (int j = 0; j < dims; ++j) data.features(i, j) = centre + normal(rng);
  }
  return data;
}

void validate(const TrainConfig& cfg) {
  if (cfg.epochs < 1) throw ArgumentError("train: epochs must be >= 1");
  if (cfg.batch_size < 1) throw ArgumentError("train: batch_size must be >= 1");
  if (!(std::isfinite(cfg.learning_rate) && cfg.learning_rate > 0.0)) {
    throw ArgumentError("train: learning_rate must be > 0");
  }
  if (!(std::isfinite(cfg.lambda_base) && cfg.lambda_base >= 0.0)) {
    throw ArgumentError("train: lambda_base must be >= 0");
  }
}

QuantReport train(const Dataset& data, QuantNet& net, const TrainConfig& cfg) {
  validate(data);
  validate(net);
  validate(cfg);
  if (data.features.cols() != net.input_size()) {
    throw ArgumentError("train: feature width does not match the network");
  }
  if (data.num_classes > net.output_size()) {
    throw ArgumentError("train: more classes than network outputs");
  }

  const auto n = static_cast<int>(data.features.rows());
  const std::size_t depth = net.layers.size();
  const std::size_t last = depth - 1;
  std::mt19937_64 rng(cfg.seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<LayerCache> caches(depth);

  QuantReport report;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double lambda = lambda_schedule(cfg.lambda_base, epoch);
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;

    for (int start = 0; start < n; start += cfg.batch_size) {
      const int batch = std::min(cfg.batch_size, n - start);
      Eigen::MatrixXd x(net.input_size(), batch);
      Eigen::MatrixXd target = Eigen::MatrixXd::Zero(net.output_size(), batch);
      for (int k = 0; k < batch; ++k) {
        const int row = order[start + k];
        x.col(k) = data.features.row(row).transpose();
        target(data.labels[row], k) = 1.0;
      }

      const Eigen::MatrixXd logits = run(net, x, WeightMode::kBinary, &caches);
      const Eigen::MatrixXd probs = softmax(logits);
      for (int k = 0; k < batch; ++k) {
        Eigen::Index label = 0;
        target.col(k).maxCoeff(&label);
        loss_sum -= std::log(std::max(probs(label, k), 1e-300));
      }
      if (!std::isfinite(loss_sum)) {
        throw NumericalError("train: non-finite loss in epoch " +
                             std::to_string(epoch));
      }

      // Mean cross-entropy gradient w.r.t. the logits.
      Eigen::MatrixXd d_out = (probs - target) / static_cast<double>(batch);
      for (std::size_t l = depth; l-- > 0;) {
        DenseLayer& layer = net.layers[l];
        const LayerCache& cache = caches[l];
        Eigen::MatrixXd d_pre =
            l == last ? d_out : d_out.cwiseProduct(ste_mask(cache.pre));
        const Eigen::VectorXd d_b = d_pre.rowwise().sum();

        Eigen::MatrixXd d_w;
        Eigen::VectorXd d_mu;
        Eigen::MatrixXd d_in;
        if (layer.binarized) {
          d_mu = d_pre.cwiseProduct(cache.binary_product).rowwise().sum();
          const Eigen::MatrixXd scaled = layer.mu.asDiagonal() * d_pre;
          d_w = (scaled * cache.input.transpose()).cwiseProduct(ste_mask(layer.W));
          if (l > 0) d_in = cache.signed_weights.transpose() * scaled;
          if (lambda > 0.0) {
            for (Eigen::Index i = 0; i < layer.W.rows(); ++i) {
              for (Eigen::Index j = 0; j < layer.W.cols(); ++j) {
                const auto g = shifted_grad(cfg.penalty, layer.W(i, j),
                                            layer.mu[i]);
                d_w(i, j) += lambda * g.d_dx;
                d_mu[i] += lambda * g.d_dmu;
              }
            }
          }
        } else {
          d_w = d_pre * cache.input.transpose();
          if (l > 0) d_in = layer.W.transpose() * d_pre;
        }

        layer.W -= cfg.learning_rate * d_w;
        layer.b -= cfg.learning_rate * d_b;
        if (layer.binarized) {
          layer.mu -= cfg.learning_rate * d_mu;
          layer.mu = layer.mu.cwiseMax(kMuFloor);
        }
        d_out = std::move(d_in);
      }
    }

    const double reg = lambda > 0.0 ? lambda * penalty_total(net, cfg.penalty)
                                    : 0.0;
    const double mean_loss = loss_sum / n;
    if (!std::isfinite(mean_loss + reg)) {
      throw NumericalError("train: non-finite loss in epoch " +
                           std::to_string(epoch));
    }
    report.lambda.push_back(lambda);
    report.loss.push_back(mean_loss);
    report.train_accuracy.push_back(accuracy(net, data, WeightMode::kBinary));
    report.concentration.push_back(concentration(net));
  }

  for (std::size_t l = 0; l < depth; ++l) {
    if (!net.layers[l].binarized) continue;
    report.mu_layers.push_back(static_cast<int>(l));
    report.final_mu.push_back(net.layers[l].mu);
  }
  report.latent_accuracy = accuracy(net, data, WeightMode::kLatent);
  report.quantized_accuracy =
      accuracy(binarize_snapshot(net), data, WeightMode::kLatent);
  return report;
}

}  // namespace foothill
