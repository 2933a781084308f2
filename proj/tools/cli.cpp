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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <optional>

#include "foothill/errors.hpp"
#include "foothill/io.hpp"
#include "foothill/penalty.hpp"
#include "foothill/prox.hpp"
#include "foothill/quantizer.hpp"
#include "foothill/regression.hpp"
#include "foothill/serialize.hpp"

namespace foothill::cli {
namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

struct EvalArgs {
  double alpha = 0.0, beta = 0.0, x = 0.0;
};

struct RidgeGapArgs {
  double alpha = 0.0, c = 0.0;
};

struct PathArgs {
  double alpha = 0.0, beta = 0.0, lambda = 0.0, z_min = -3.0, z_max = 3.0;
  int n = 121;
  std::string out;
};

struct FitArgs {
  std::string data, out;
  double lambda = 0.0, alpha = 1.0, beta = 2.0, tol = kDefaultTol;
  int max_iter = kDefaultMaxIter;
};

struct ConsistencyArgs {
  std::vector<double> theta;
  std::vector<int> n_list;
  int reps = 30;
  std::uint64_t seed = 1;
  double lambda = 1.0, alpha = 1.0, beta = 2.0, noise_sd = 1.0;
  std::string out;
};

// Shared by quantize and compare.
struct TrainArgs {
  std::string config, out, epochs_csv, data;
  std::vector<int> hidden{16, 16};
  int points = 1000;
  double separation = 4.0;
  std::optional<std::uint64_t> data_seed;
};

void add_train_options(CLI::App* cmd, TrainArgs& a) {
  cmd->add_option("--config", a.config, "JSON file with TrainConfig fields")
      ->required();
  cmd->add_option("--data", a.data,
                  "Dataset CSV (label,f1,...,fp); default is a synthetic "
                  "two-Gaussian set");
  cmd->add_option("--hidden", a.hidden, "Hidden layer widths")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--points", a.points, "Synthetic set size")
      ->capture_default_str();
  cmd->add_option("--separation", a.separation,
                  "Distance between synthetic class means, in sigmas")
      ->capture_default_str();
  cmd->add_option("--data-seed", a.data_seed,
                  "Seed of the synthetic set (default: config seed)");
}

Dataset load_dataset(const TrainArgs& a, const TrainConfig& cfg) {
  if (!a.data.empty()) return read_dataset_csv(a.data);
  return make_two_gaussians(a.points, a.separation, 2,
                            a.data_seed.value_or(cfg.seed));
}

QuantNet build_net(const TrainArgs& a, const Dataset& data,
                   const TrainConfig& cfg) {
  std::vector<int> sizes{static_cast<int>(data.features.cols())};
  sizes.insert(sizes.end(), a.hidden.begin(), a.hidden.end());
  sizes.push_back(data.num_classes);
  return make_quant_net(sizes, cfg.seed);
}

TrainConfig load_config(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return train_config_from_json(j);
}

void write_json(const std::string& path, const nlohmann::json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Foothill penalty toolkit: penalty calculus, proximal paths, "
               "penalized regression and binary quantization experiments",
               "foothill"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Penalty value, slope, curvature");
  eval_cmd->add_option("--alpha", eval_args.alpha)->required();
  eval_cmd->add_option("--beta", eval_args.beta)->required();
  eval_cmd->add_option("--x", eval_args.x)->required();

  EvalArgs saddle_args;
  auto* saddle_cmd = app.add_subcommand("saddle", "Inflection point x0 > 0");
  saddle_cmd->add_option("--alpha", saddle_args.alpha)->required();
  saddle_cmd->add_option("--beta", saddle_args.beta)->required();

  RidgeGapArgs gap_args;
  auto* gap_cmd = app.add_subcommand(
      "ridge-gap", "Integral of (x^2 - p(x))^2 on [0, c] with beta = 2/alpha");
  gap_cmd->add_option("--alpha", gap_args.alpha)->required();
  gap_cmd->add_option("--c", gap_args.c)->required();

  PathArgs path_args;
  auto* path_cmd =
      app.add_subcommand("path", "Write the univariate solution path as CSV");
  path_cmd->add_option("--alpha", path_args.alpha)->required();
  path_cmd->add_option("--beta", path_args.beta)->required();
  path_cmd->add_option("--lambda", path_args.lambda)->required();
  path_cmd->add_option("--zmin", path_args.z_min)->capture_default_str();
  path_cmd->add_option("--zmax", path_args.z_max)->capture_default_str();
  path_cmd->add_option("--n", path_args.n)->capture_default_str();
  path_cmd->add_option("--out", path_args.out)->required();

  FitArgs fit_args;
  auto* fit_cmd =
      app.add_subcommand("fit", "Penalized least squares on a CSV dataset");
  fit_cmd->add_option("--data", fit_args.data, "CSV with header y,x1,...,xp")
      ->required();
  fit_cmd->add_option("--lambda", fit_args.lambda)->required();
  fit_cmd->add_option("--alpha", fit_args.alpha)->capture_default_str();
  fit_cmd->add_option("--beta", fit_args.beta)->capture_default_str();
  fit_cmd->add_option("--max-iter", fit_args.max_iter)->capture_default_str();
  fit_cmd->add_option("--tol", fit_args.tol)->capture_default_str();
  fit_cmd->add_option("--out", fit_args.out)->required();

  ConsistencyArgs cons_args;
  auto* cons_cmd = app.add_subcommand(
      "consistency", "sqrt(n)-scaled estimation error at fixed lambda");
  cons_cmd->add_option("--theta", cons_args.theta, "True coefficients")
      ->delimiter(',')
      ->required();
  cons_cmd->add_option("--n-list", cons_args.n_list, "Increasing sample sizes")
      ->delimiter(',')
      ->required();
  cons_cmd->add_option("--reps", cons_args.reps)->capture_default_str();
  cons_cmd->add_option("--seed", cons_args.seed)->capture_default_str();
  cons_cmd->add_option("--lambda", cons_args.lambda)->capture_default_str();
  cons_cmd->add_option("--alpha", cons_args.alpha)->capture_default_str();
  cons_cmd->add_option("--beta", cons_args.beta)->capture_default_str();
  cons_cmd->add_option("--noise-sd", cons_args.noise_sd)->capture_default_str();
  cons_cmd->add_option("--out", cons_args.out)->required();

  TrainArgs quant_args;
  auto* quant_cmd = app.add_subcommand(
      "quantize", "Train a small binary MLP with a shifted penalty");
  add_train_options(quant_cmd, quant_args);
  quant_cmd->add_option("--out", quant_args.out, "Report JSON")->required();
  quant_cmd->add_option("--epochs-csv", quant_args.epochs_csv,
                        "Also write per-epoch rows as CSV");

  TrainArgs cmp_args;
  cmp_args.out = "compare.csv";
  auto* cmp_cmd = app.add_subcommand(
      "compare", "foothill vs mod_l1 vs mod_l2 under one seed, as CSV");
  add_train_options(cmp_cmd, cmp_args);
  cmp_cmd->add_option("--out", cmp_args.out)->capture_default_str();

  std::vector<const char*> argv{"foothill"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*eval_cmd) {
      const PenaltyParams params(eval_args.alpha, eval_args.beta);
      const double x = eval_args.x;
      const nlohmann::json j{{"alpha", params.alpha()},
                             {"beta", params.beta()},
                             {"x", x},
                             {"value", eval(params, x)},
                             {"grad", grad(params, x)},
                             {"hess", hess(params, x)}};
      out << j.dump(2) << "\n";
    } else if (*saddle_cmd) {
      const PenaltyParams params(saddle_args.alpha, saddle_args.beta);
      nlohmann::json j = to_json(saddle(params));
      j["alpha"] = params.alpha();
      j["beta"] = params.beta();
      out << j.dump(2) << "\n";
    } else if (*gap_cmd) {
      const PenaltyParams params(gap_args.alpha, 2.0 / gap_args.alpha);
      const nlohmann::json j{
          {"alpha", params.alpha()},
          {"beta", params.beta()},
          {"c", gap_args.c},
          {"gap", ridge_gap(params, gap_args.c)},
          {"leading_term", ridge_gap_leading_term(params.alpha(), gap_args.c)}};
      out << j.dump(2) << "\n";
    } else if (*path_cmd) {
      const PenaltyParams params(path_args.alpha, path_args.beta);
      const auto path = solution_path(path_args.lambda, params, path_args.z_min,
                                      path_args.z_max, path_args.n);
      write_file_atomic(path_args.out, to_csv(path));
    } else if (*fit_cmd) {
      const auto data = read_regression_csv(fit_args.data);
      const RegressionProblem problem{data.X, data.y, fit_args.lambda,
                                      PenaltyParams(fit_args.alpha,
                                                    fit_args.beta)};
      const auto result = fit(problem, fit_args.max_iter, fit_args.tol);
      write_json(fit_args.out, to_json(result));
    } else if (*cons_cmd) {
      const Eigen::Map<const Eigen::VectorXd> theta(
          cons_args.theta.data(),
          static_cast<Eigen::Index>(cons_args.theta.size()));
      const auto report = consistency_experiment(
          theta, cons_args.n_list, cons_args.reps, cons_args.lambda,
          PenaltyParams(cons_args.alpha, cons_args.beta), cons_args.noise_sd,
          cons_args.seed);
      write_json(cons_args.out, to_json(report));
    } else if (*quant_cmd) {
      const TrainConfig cfg = load_config(quant_args.config);
      const Dataset data = load_dataset(quant_args, cfg);
      QuantNet net = build_net(quant_args, data, cfg);
      const QuantReport report = train(data, net, cfg);
      nlohmann::json j = to_json(report);
      j["config"] = to_json(cfg);
      write_json(quant_args.out, j);
      if (!quant_args.epochs_csv.empty()) {
        write_file_atomic(quant_args.epochs_csv, epoch_csv(report));
      }
    } else if (*cmp_cmd) {
      const TrainConfig base = load_config(cmp_args.config);
      const Dataset data = load_dataset(cmp_args, base);
      const std::vector<ShiftedPenalty> penalties{
          ShiftedPenalty::foothill(base.penalty.params),
          ShiftedPenalty::mod_l1(), ShiftedPenalty::mod_l2()};
      std::vector<std::string> labels;
      std::vector<QuantReport> reports;
      for (const auto& pen : penalties) {
        TrainConfig cfg = base;
        cfg.penalty = pen;
        QuantNet net = build_net(cmp_args, data, cfg);
        reports.push_back(train(data, net, cfg));
        labels.emplace_back(to_string(pen.kind));
      }
      write_file_atomic(cmp_args.out, comparison_csv(labels, reports));
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}

}  // namespace foothill::cli
