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

#include "foothill/serialize.hpp"

#include <set>
#include <string>
#include <vector>

#include "foothill/errors.hpp"

namespace foothill {
namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

template <typename T>
T get_checked(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("config: bad value for '") + key +
                        "': " + e.what());
  }
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known,
                    const char* where) {
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) {
      throw ArgumentError(std::string(where) + ": unknown key '" + item.key() +
                          "'");
    }
  }
}

}  // namespace

nlohmann::json to_json(const SaddleInfo& info) {
  return {{"x0", info.x0}, {"value", info.value}};
}

nlohmann::json to_json(const FitResult& result) {
  return {{"theta", to_std(result.theta)},
          {"objective_trace", result.objective_trace},
          {"converged", result.converged},
          {"iterations", result.iterations},
          {"gradient_norm", result.gradient_norm}};
}

nlohmann::json to_json(const ConsistencyReport& report) {
  return {{"sample_sizes", report.sample_sizes},
          {"scaled_errors", report.scaled_errors},
          {"replicates", report.replicates},
          {"seed", report.seed}};
}

nlohmann::json to_json(const QuantReport& report) {
  nlohmann::json mu = nlohmann::json::array();
  for (std::size_t k = 0; k < report.final_mu.size(); ++k) {
    mu.push_back({{"layer", report.mu_layers[k]},
                  {"mu", to_std(report.final_mu[k])}});
  }
  return {{"lambda", report.lambda},
          {"loss", report.loss},
          {"train_accuracy", report.train_accuracy},
          {"concentration", report.concentration},
          {"final_mu", mu},
          {"latent_accuracy", report.latent_accuracy},
          {"quantized_accuracy", report.quantized_accuracy}};
}

nlohmann::json to_json(const TrainConfig& cfg) {
  return {{"epochs", cfg.epochs},
          {"batch_size", cfg.batch_size},
          {"learning_rate", cfg.learning_rate},
          {"lambda_base", cfg.lambda_base},
          {"seed", cfg.seed},
          {"penalty",
           {{"kind", std::string(to_string(cfg.penalty.kind))},
            {"alpha", cfg.penalty.params.alpha()},
            {"beta", cfg.penalty.params.beta()}}}};
}

TrainConfig train_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ArgumentError("config: expected a JSON object");
  reject_unknown(j,
                 {"epochs", "batch_size", "learning_rate", "lambda_base",
                  "seed", "penalty"},
                 "config");
  TrainConfig cfg;
  if (j.contains("epochs")) cfg.epochs = get_checked<int>(j, "epochs");
  if (j.contains("batch_size")) {
    cfg.batch_size = get_checked<int>(j, "batch_size");
  }
  if (j.contains("learning_rate")) {
    cfg.learning_rate = get_checked<double>(j, "learning_rate");
  }
  if (j.contains("lambda_base")) {
    cfg.lambda_base = get_checked<double>(j, "lambda_base");
  }
  if (j.contains("seed")) cfg.seed = get_checked<std::uint64_t>(j, "seed");
  if (j.contains("penalty")) {
    const auto& pen = j.at("penalty");
    if (!pen.is_object()) throw ArgumentError("config: penalty must be an object");
    reject_unknown(pen, {"kind", "alpha", "beta"}, "config.penalty");
    const PenaltyKind kind =
        pen.contains("kind")
            ? parse_penalty_kind(get_checked<std::string>(pen, "kind"))
            : PenaltyKind::kFoothill;
    const double alpha = pen.contains("alpha")
                             ? get_checked<double>(pen, "alpha")
                             : cfg.penalty.params.alpha();
    const double beta = pen.contains("beta") ? get_checked<double>(pen, "beta")
                                             : cfg.penalty.params.beta();
    cfg.penalty = {kind, PenaltyParams(alpha, beta)};
  }
  validate(cfg);
  return cfg;
}

}  // namespace foothill
