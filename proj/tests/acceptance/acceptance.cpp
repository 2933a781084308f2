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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "../oracles.hpp"
#include "foothill/penalty.hpp"
#include "foothill/prox.hpp"
#include "foothill/quantizer.hpp"
#include "foothill/regression.hpp"

namespace foothill {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;  // 0 means no limit
  std::function<Outcome()> check;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * unit_(rng_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  double normal() { return normal_(rng_); }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Same draw ranges as the penalty unit tests.
PenaltyParams random_penalty(Sampler& s) {
  return {s.log_uniform(0.1, 10.0), s.log_uniform(0.1, 4.0)};
}

Outcome calculus() {
  Sampler s(101);
  double worst_grad = 0.0;
  double worst_hess = 0.0;
  for (int i = 0; i < 100; ++i) {
    const PenaltyParams p = random_penalty(s);
    const double x = s.uniform(-5.0, 5.0);
    const double fd_grad = testing::central_difference(
        [&](double t) { return eval(p, t); }, x);
    const double fd_hess = testing::central_difference(
        [&](double t) { return grad(p, t); }, x);
    worst_grad = std::max(worst_grad, std::abs(grad(p, x) - fd_grad));
    worst_hess = std::max(worst_hess, std::abs(hess(p, x) - fd_hess));
  }
  return {worst_grad < 1e-6 && worst_hess < 1e-6,
          fmt("max |grad - fd| = %.2e, max |hess - fd| = %.2e", worst_grad,
              worst_hess)};
}

Outcome lasso_limit() {
  const std::vector<double> betas{1.0, 10.0, 100.0, 1000.0};
  std::vector<double> gaps;
  for (double beta : betas) {
    const PenaltyParams p(1.0, beta);
    double sup = 0.0;
    for (int i = 0; i <= 200000; ++i) {
      const double x = -10.0 + i * 1e-4;
      sup = std::max(sup, std::abs(eval(p, x) - std::abs(x)));
    }
    gaps.push_back(sup);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    monotone = monotone && gaps[i] < gaps[i - 1];
  }
  return {monotone && gaps.back() < 2e-3,
          fmt("sup gaps %.3e, %.3e, ", gaps[0], gaps[1]) +
              fmt("%.3e, %.3e", gaps[2], gaps[3])};
}

Outcome ridge_approximation() {
  const PenaltyParams p(16.0, 0.125);
  const double gap = ridge_gap(p, 1.0);
  const double leading = 1.0 / (81.0 * std::pow(16.0, 4));
  const double ratio = gap / leading;
  bool below = true;
  for (int i = 0; i < 1000; ++i) {
    const double x = -10.0 + 20.0 * i / 999.0;
    below = below && eval(p, x) <= x * x;
  }
  return {ratio > 0.5 && ratio < 2.0 && below,
          fmt("gap = %.6e, gap / (1/(81*16^4)) = %.4f", gap, ratio) +
              (below ? ", eval <= x^2 on grid" : ", eval > x^2 somewhere")};
}

Outcome saddle_points() {
  Sampler s(104);
  double worst_hess = 0.0;
  double worst_rel = 0.0;
  for (int i = 0; i < 50; ++i) {
    const PenaltyParams p = random_penalty(s);
    const SaddleInfo info = saddle(p);
    const double expected = 2.0 * p.alpha() / p.beta();
    worst_hess = std::max(worst_hess, std::abs(hess(p, info.x0)));
    worst_rel = std::max(worst_rel,
                         std::abs(eval(p, info.x0) - expected) / expected);
  }
  return {worst_hess < 1e-9 && worst_rel <= 1e-12,
          fmt("max |hess(x0)| = %.2e, max rel value error = %.2e", worst_hess,
              worst_rel)};
}

Outcome quasiconvexity() {
  Sampler s(105);
  int violations = 0;
  for (int i = 0; i < 50; ++i) {
    const PenaltyParams p = random_penalty(s);
    for (int k = 0; k < 500; ++k) {
      const double x = std::pow(10.0, -8.0 + 11.0 * k / 499.0);
      if (!(grad(p, x) > 0.0)) ++violations;
      if (!(grad(p, -x) < 0.0)) ++violations;
    }
  }
  return {violations == 0,
          fmt("%.0f sign violations on +/-[1e-8, 1e3]", violations)};
}

Outcome prox_equivalence() {
  Sampler s(106);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double lambda = s.uniform(0.0, 2.0);
    const double z = s.uniform(-5.0, 5.0);
    const PenaltyParams p(s.log_uniform(0.1, 100.0), s.log_uniform(0.01, 100.0));
    const ProxQuery q{z, lambda, p};
    worst = std::max(worst, std::abs(prox_solve(q) - prox_oracle(q)));
  }
  const double lambda = 0.5;
  const PenaltyParams lasso(1.0, 1000.0);
  const auto sup_gap = [&](int n_points) {
    const auto path = solution_path(lambda, lasso, -3.0, 3.0, n_points);
    double sup = 0.0;
    for (std::size_t i = 0; i < path.z_grid.size(); ++i) {
      sup = std::max(sup, std::abs(path.theta_values[i] -
                                   testing::soft_threshold(path.z_grid[i],
                                                           lambda)));
    }
    return sup;
  };
  const double path_sup = sup_gap(121);
  const double fine_sup = sup_gap(6001);
  return {worst < 2e-5 && path_sup < 5e-3,
          fmt("max |solve - oracle| = %.2e over 500 queries; lasso-limit path "
              "sup = %.2e (121 points; %.2e on 6001 points, info)",
              worst, path_sup, fine_sup)};
}

Outcome orthogonal_design() {
  Sampler s(107);
  double worst = 0.0;
  int unconverged = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index p = 1 + static_cast<Eigen::Index>(s.engine()() % 8);
    const Eigen::Index n = p + 10 + static_cast<Eigen::Index>(s.engine()() % 30);
    Eigen::MatrixXd g(n, p);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = s.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd X = std::sqrt(static_cast<double>(n)) *
                              (qr.householderQ() * Eigen::MatrixXd::Identity(n, p));
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = 3.0 * s.normal();
    const double lambda = s.uniform(0.0, 2.0);
    const PenaltyParams params(s.log_uniform(0.1, 100.0),
                               s.log_uniform(0.01, 100.0));
    const auto result = fit({X, y, lambda, params});
    if (!result.converged) ++unconverged;
    const Eigen::VectorXd z = X.transpose() * y / static_cast<double>(n);
    for (Eigen::Index j = 0; j < p; ++j) {
      worst = std::max(worst,
                       std::abs(result.theta[j] - prox_solve({z[j], lambda, params})));
    }
  }
  return {worst < 1e-5,
          fmt("max |fit - prox| = %.2e over 100 problems (%.0f unconverged)",
              worst, unconverged)};
}

ConsistencyReport run_consistency() {
  const Eigen::Vector3d theta(1.0, -0.5, 2.0);
  return consistency_experiment(theta, {100, 400, 1600}, 30, 1.0, {1.0, 2.0},
                                1.0, 2024);
}

Outcome consistency() {
  const auto report = run_consistency();
  const auto& e = report.scaled_errors;
  const double hi = *std::max_element(e.begin(), e.end());
  const double lo = *std::min_element(e.begin(), e.end());
  return {hi / lo < 2.0,
          fmt("scaled errors %.4f, %.4f, %.4f", e[0], e[1], e[2]) +
              fmt("; max/min = %.4f", hi / lo)};
}

QuantReport run_quantization(double lambda_base) {
  TrainConfig cfg;  // foothill(0.5, 50), 100 epochs, seed 1
  cfg.lambda_base = lambda_base;
  const Dataset data = make_two_gaussians(1000, 4.0, 2, cfg.seed);
  const int sizes[] = {2, 16, 16, 2};
  QuantNet net = make_quant_net(sizes, cfg.seed);
  return train(data, net, cfg);
}

Outcome quantization() {
  const QuantReport r = run_quantization(TrainConfig{}.lambda_base);
  const QuantReport control = run_quantization(0.0);
  const double conc = r.concentration.back();
  const double acc = r.train_accuracy.back();
  const double snap_gap = std::abs(r.quantized_accuracy - r.latent_accuracy);
  const double control_gap = conc - control.concentration.back();
  return {conc >= 0.9 && acc >= 0.95 && snap_gap <= 0.05 && control_gap >= 0.2,
          fmt("concentration %.3f, train acc %.3f, |snapshot - latent| = %.3f",
              conc, acc, snap_gap) +
              fmt("; lambda_base=0 concentration %.3f (gap %.3f)",
                  control.concentration.back(), control_gap)};
}

bool same_reports(const QuantReport& a, const QuantReport& b) {
  if (a.final_mu.size() != b.final_mu.size()) return false;
  for (std::size_t i = 0; i < a.final_mu.size(); ++i) {
    if (a.final_mu[i] != b.final_mu[i]) return false;
  }
  return a.lambda == b.lambda && a.loss == b.loss &&
         a.train_accuracy == b.train_accuracy &&
         a.concentration == b.concentration && a.mu_layers == b.mu_layers &&
         a.latent_accuracy == b.latent_accuracy &&
         a.quantized_accuracy == b.quantized_accuracy;
}

Outcome determinism() {
  const auto c1 = run_consistency();
  const auto c2 = run_consistency();
  const bool cons_same = c1.scaled_errors == c2.scaled_errors &&
                         c1.sample_sizes == c2.sample_sizes;
  const double lb = TrainConfig{}.lambda_base;
  const bool quant_same =
      same_reports(run_quantization(lb), run_quantization(lb)) &&
      same_reports(run_quantization(0.0), run_quantization(0.0));
  return {cons_same && quant_same,
          std::string("consistency ") + (cons_same ? "identical" : "DIFFERS") +
              ", quantization " + (quant_same ? "identical" : "DIFFERS")};
}

}  // namespace
}  // namespace foothill

int main() {
  using namespace foothill;
  const std::vector<Criterion> criteria{
      {1, "penalty calculus vs finite differences", 1.0, calculus},
      {2, "lasso limit", 0.0, lasso_limit},
      {3, "ridge approximation", 0.0, ridge_approximation},
      {4, "saddle points", 0.0, saddle_points},
      {5, "quasiconvexity", 0.0, quasiconvexity},
      {6, "prox oracle equivalence", 30.0, prox_equivalence},
      {7, "orthogonal design equivalence", 0.0, orthogonal_design},
      {8, "root-n consistency", 120.0, consistency},
      {9, "quantization concentration", 180.0, quantization},
      {10, "determinism", 0.0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (c.time_limit_s > 0.0 && seconds >= c.time_limit_s) {
      outcome.pass = false;
      outcome.detail += fmt("; exceeded %.0f s limit", c.time_limit_s);
    }
    if (!outcome.pass) ++failures;
    std::printf("%s criterion %2d (%s): %s [%.2f s]\n",
                outcome.pass ? "PASS" : "FAIL", c.id, c.title,
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
