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

// Univariate foothill-penalized least squares:
//
//   argmin_theta  0.5 * (z_hat - theta)^2 + lambda * p(theta)
//
// which is what the penalized regression decouples into under an orthonormal
// design. The objective can have two local minima, so the solver searches
// globally before refining.

#pragma once

#include <vector>

#include "foothill/penalty.hpp"

namespace foothill {

struct ProxQuery {
  double z_hat;
  double lambda;
  PenaltyParams params;
};

struct SolutionPath {
  std::vector<double> z_grid;
  std::vector<double> theta_values;
  double lambda;
  PenaltyParams params;
};

// Throws DomainError for non-finite z_hat/lambda, ArgumentError for
// lambda < 0.
void validate(const ProxQuery& q);

double prox_objective(const ProxQuery& q, double theta);

// Global minimizer to ~1e-12. Grid scan over [min(0, z) - 1, max(0, z) + 1],
// root-polishing of the derivative around every discrete local minimum, then
// the best candidate wins. Near-ties (objective within 1e-12) go to the
// candidate with smaller |theta|.
double prox_solve(const ProxQuery& q);

// Brute-force grid minimizer, step 1e-5 over [-|z| - 1, |z| + 1]. No
// refinement, so accurate to about 1e-5. Ground truth for prox_solve.
double prox_oracle(const ProxQuery& q);

// prox_solve on n_points uniformly spaced values of z_hat in [z_min, z_max].
SolutionPath solution_path(double lambda, const PenaltyParams& params,
                           double z_min, double z_max, int n_points);

}  // namespace foothill
