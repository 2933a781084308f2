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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "foothill/errors.hpp"
#include "foothill/penalty.hpp"

namespace foothill {

// Linear model y = X theta + noise, estimated by
//
//   argmin_theta (1 / 2n) ||y - X theta||^2 + lambda * sum_j p(theta_j).
struct RegressionProblem {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  double lambda;
  PenaltyParams params;
};

struct FitResult {
  Eigen::VectorXd theta;
  // Objective at the starting point, then after every accepted step.
  std::vector<double> objective_trace;
  bool converged = false;
  int iterations = 0;
  double gradient_norm = 0.0;
};

struct ConsistencyReport {
  std::vector<int> sample_sizes;
  // Mean over replicates of sqrt(n) * ||theta_hat_n - theta||.
  std::vector<double> scaled_errors;
  int replicates = 0;
  std::uint64_t seed = 0;
};

// Thrown by fit when the objective becomes non-finite; carries the trace up
// to that point.
class FitDivergedError : public NumericalError {
 public:
  FitDivergedError(const std::string& what, std::vector<double> trace)
      : NumericalError(what), trace_(std::move(trace)) {}
  const std::vector<double>& trace() const { return trace_; }

 private:
  std::vector<double> trace_;
};

inline constexpr int kDefaultMaxIter = 100000;
inline constexpr double kDefaultTol = 1e-8;

// ArgumentError on empty or mismatched shapes, DomainError on non-finite
// data, ArgumentError on negative lambda.
void validate(const RegressionProblem& problem);

double objective(const RegressionProblem& problem, const Eigen::VectorXd& theta);
Eigen::VectorXd objective_gradient(const RegressionProblem& problem,
                                   const Eigen::VectorXd& theta);

// Gradient descent with Armijo backtracking (halving), started from the OLS
// solution. Every iteration tries the step 1 / L first, where L is the top
// eigenvalue of X^T X / n plus lambda * alpha * beta, the penalty's largest
// curvature. Stops once ||gradient|| < tol.
FitResult fit(const RegressionProblem& problem, int max_iter = kDefaultMaxIter,
              double tol = kDefaultTol);

// Least squares via column-pivoting Householder QR. Throws
// SingularMatrixError when X does not have full column rank.
Eigen::VectorXd ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

// Monte Carlo check of sqrt(n)-consistency at fixed lambda. For every n and
// replicate, draws X with i.i.d. N(0, 1) entries and y = X theta + N(0, sd^2)
// noise, then fits. Replicates run in parallel but each owns an RNG stream
// seeded from (seed, replicate, n index), so the report is bitwise
// reproducible.
ConsistencyReport consistency_experiment(const Eigen::VectorXd& true_theta,
                                         const std::vector<int>& n_list,
                                         int replicates, double lambda,
                                         const PenaltyParams& params,
                                         double noise_sd, std::uint64_t seed);

}  // namespace foothill
