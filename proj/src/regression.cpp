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

#include "foothill/regression.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

namespace foothill {
namespace {

constexpr double kArmijoSlope = 1e-4;
constexpr double kMinStep = 1e-30;

double penalty_sum(const PenaltyParams& params, const Eigen::VectorXd& theta) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < theta.size(); ++j) s += eval(params, theta[j]);
  return s;
}

// objective(theta + step) - objective(theta), without subtracting two
// rounded objective values; near convergence the decrease is far below
// the rounding of the objective itself.
double objective_increment(const RegressionProblem& problem,
                           const Eigen::VectorXd& theta,
                           const Eigen::VectorXd& residual,
                           const Eigen::VectorXd& step) {
  const auto n = static_cast<double>(problem.X.rows());
  const Eigen::VectorXd moved = problem.X * step;
  double delta = (0.5 * moved.squaredNorm() - residual.dot(moved)) / n;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    delta += problem.lambda * eval_increment(problem.params, theta[j], step[j]);
  }
  return delta;
}

double lipschitz_estimate(const RegressionProblem& problem) {
  const auto n = static_cast<double>(problem.X.rows());
  const Eigen::MatrixXd gram = problem.X.transpose() * problem.X / n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram,
                                                     Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff() +
         problem.lambda * problem.params.alpha() * problem.params.beta();
}

Eigen::VectorXd fit_for_report(const Eigen::MatrixXd& X,
                               const Eigen::VectorXd& y, double lambda,
                               const PenaltyParams& params) {
  if (lambda == 0.0) return ols(X, y);
  // Jn(theta) = 0.5 ||y - X theta||^2 + lambda sum p(theta_j) is n times the
  // (1 / 2n)-scaled objective with lambda / n, so both share a minimizer.
  const double scaled_lambda = lambda / static_cast<double>(X.rows());
  return fit({X, y, scaled_lambda, params}).theta;
}

}  // namespace

void validate(const RegressionProblem& problem) {
  if (problem.X.rows() < 1 || problem.X.cols() < 1) {
    throw ArgumentError("regression: design matrix must be at least 1x1");
  }
  if (problem.y.size() != problem.X.rows()) {
    throw ArgumentError("regression: y length does not match rows of X");
  }
  if (!problem.X.allFinite() || !problem.y.allFinite()) {
    throw DomainError("regression: X and y must be finite");
  }
  if (!std::isfinite(problem.lambda)) {
    throw DomainError("regression: lambda must be finite");
  }
  if (problem.lambda < 0.0) {
    throw ArgumentError("regression: lambda must be >= 0");
  }
}

double objective(const RegressionProblem& problem,
                 const Eigen::VectorXd& theta) {
  const auto n = static_cast<double>(problem.X.rows());
  const double rss = (problem.y - problem.X * theta).squaredNorm();
  return 0.5 * rss / n + problem.lambda * penalty_sum(problem.params, theta);
}

Eigen::VectorXd objective_gradient(const RegressionProblem& problem,
                                   const Eigen::VectorXd& theta) {
  const auto n = static_cast<double>(problem.X.rows());
  Eigen::VectorXd g =
      -problem.X.transpose() * (problem.y - problem.X * theta) / n;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    g[j] += problem.lambda * grad(problem.params, theta[j]);
  }
  return g;
}

FitResult fit(const RegressionProblem& problem, int max_iter, double tol) {
  validate(problem);
  if (max_iter < 1) throw ArgumentError("fit: max_iter must be >= 1");
  if (!(tol > 0.0)) throw ArgumentError("fit: tol must be > 0");

  FitResult result;
  result.theta = ols(problem.X, problem.y);
  double f = objective(problem, result.theta);
  result.objective_trace.push_back(f);
  if (!std::isfinite(f)) {
    throw FitDivergedError("fit: non-finite objective at start",
                           result.objective_trace);
  }

  const double initial_step = 1.0 / lipschitz_estimate(problem);
  Eigen::VectorXd g = objective_gradient(problem, result.theta);
  result.gradient_norm = g.norm();

  while (result.gradient_norm >= tol && result.iterations < max_iter) {
    const double g2 = g.squaredNorm();
    const Eigen::VectorXd residual = problem.y - problem.X * result.theta;
    double step = initial_step;
    Eigen::VectorXd candidate;
    bool accepted = false;
    while (step >= kMinStep) {
      const Eigen::VectorXd move = -step * g;
      candidate = result.theta + move;
      if (candidate == result.theta) break;
      const double delta =
          objective_increment(problem, result.theta, residual, move);
      if (!std::isfinite(delta)) {
        throw FitDivergedError("fit: non-finite objective at iteration " +
                                   std::to_string(result.iterations),
                               result.objective_trace);
      }
      if (delta <= -kArmijoSlope * step * g2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    // No step gives sufficient decrease: the iterate is at the rounding floor.
    if (!accepted) break;

    result.theta = std::move(candidate);
    f = objective(problem, result.theta);
    if (!std::isfinite(f)) {
      throw FitDivergedError("fit: non-finite objective at iteration " +
                                 std::to_string(result.iterations),
                             result.objective_trace);
    }
    result.objective_trace.push_back(f);
    ++result.iterations;
    g = objective_gradient(problem, result.theta);
    result.gradient_norm = g.norm();
  }
  result.converged = result.gradient_norm < tol;
  return result;
}

Eigen::VectorXd ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  if (X.rows() < 1 || X.cols() < 1) {
    throw ArgumentError("ols: design matrix must be at least 1x1");
  }
  if (y.size() != X.rows()) {
    throw ArgumentError("ols: y length does not match rows of X");
  }
  if (X.rows() < X.cols()) {
    throw SingularMatrixError("ols: fewer rows than columns");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < X.cols()) {
    throw SingularMatrixError("ols: design matrix is rank deficient");
  }
  return qr.solve(y);
}

ConsistencyReport consistency_experiment(const Eigen::VectorXd& true_theta,
                                         const std::vector<int>& n_list,
                                         int replicates, double lambda,
                                         const PenaltyParams& params,
                                         double noise_sd, std::uint64_t seed) {
  if (true_theta.size() < 1 || !true_theta.allFinite()) {
    throw ArgumentError("consistency: true_theta must be non-empty and finite");
  }
  if (n_list.empty()) throw ArgumentError("consistency: n_list is empty");
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    if (n_list[k] < true_theta.size() || (k > 0 && n_list[k] <= n_list[k - 1])) {
      throw ArgumentError(
          "consistency: n_list must be increasing with n >= number of "
          "coefficients");
    }
  }
  if (replicates < 10) {
    throw ArgumentError("consistency: need at least 10 replicates");
  }
  if (!(std::isfinite(lambda) && lambda >= 0.0)) {
    throw ArgumentError("consistency: lambda must be finite and >= 0");
  }
  if (!(std::isfinite(noise_sd) && noise_sd >= 0.0)) {
    throw ArgumentError("consistency: noise_sd must be finite and >= 0");
  }

  const Eigen::Index p = true_theta.size();
  const std::size_t sizes = n_list.size();
  // errors[r * sizes + k] = sqrt(n_k) * ||theta_hat - theta|| for replicate r.
  std::vector<double> errors(static_cast<std::size_t>(replicates) * sizes);

  auto run_replicate = [&](int r) {
    for (std::size_t k = 0; k < sizes; ++k) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed),
                        static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(r),
                        static_cast<std::uint32_t>(k)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> normal(0.0, 1.0);
      const int n = n_list[k];
      Eigen::MatrixXd X(n, p);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) X(i, j) = normal(rng);
      }
      Eigen::VectorXd y = X * true_theta;
      for (Eigen::Index i = 0; i < n; ++i) y[i] += noise_sd * normal(rng);
      const Eigen::VectorXd theta_hat = fit_for_report(X, y, lambda, params);
      errors[static_cast<std::size_t>(r) * sizes + k] =
          std::sqrt(static_cast<double>(n)) * (theta_hat - true_theta).norm();
    }
  };

  const int workers = std::clamp(
      static_cast<int>(std::thread::hardware_concurrency()), 1, replicates);
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int r = w; r < replicates; r += workers) run_replicate(r);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  ConsistencyReport report;
  report.sample_sizes = n_list;
  report.replicates = replicates;
  report.seed = seed;
  report.scaled_errors.assign(sizes, 0.0);
  for (int r = 0; r < replicates; ++r) {
    for (std::size_t k = 0; k < sizes; ++k) {
      report.scaled_errors[k] += errors[static_cast<std::size_t>(r) * sizes + k];
    }
  }
  for (double& e : report.scaled_errors) e /= replicates;
  return report;
}

}  // namespace foothill
