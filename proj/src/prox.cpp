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

#include "foothill/prox.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "foothill/errors.hpp"

namespace foothill {
namespace {

constexpr int kCoarseGridPoints = 10000;
constexpr double kOracleStep = 1e-5;
constexpr double kTieTolerance = 1e-12;

struct Candidate {
  double theta;
  double objective;
};

// True if `c` should replace `best`.
bool better(const Candidate& c, const Candidate& best) {
  if (c.objective < best.objective - kTieTolerance) return true;
  if (c.objective > best.objective + kTieTolerance) return false;
  return std::abs(c.theta) < std::abs(best.theta);
}

double objective_slope(const ProxQuery& q, double theta) {
  return theta - q.z_hat + q.lambda * grad(q.params, theta);
}

// Minimizer of the objective on [a, b] by golden-section search.
double golden_section(const ProxQuery& q, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = prox_objective(q, c);
  double fd = prox_objective(q, d);
  while (b - a > 1e-12 * (1.0 + std::abs(a) + std::abs(b))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = prox_objective(q, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = prox_objective(q, d);
    }
  }
  return 0.5 * (a + b);
}

// Local minimizer inside [a, b]. With a sign change of the slope this is a
// bracketed Newton iteration on the slope, otherwise golden section.
double refine(const ProxQuery& q, double a, double b) {
  double slope_a = objective_slope(q, a);
  double slope_b = objective_slope(q, b);
  if (!(slope_a < 0.0 && slope_b > 0.0)) return golden_section(q, a, b);

  double theta = 0.5 * (a + b);
  for (int iter = 0; iter < 200; ++iter) {
    const double s = objective_slope(q, theta);
    if (s == 0.0) return theta;
    if (s < 0.0) {
      a = theta;
    } else {
      b = theta;
    }
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() *
                     (1.0 + std::abs(theta))) {
      break;
    }
    const double curvature = 1.0 + q.lambda * hess(q.params, theta);
    const double newton = theta - s / curvature;
    theta = curvature > 0.0 && newton > a && newton < b ? newton
                                                        : 0.5 * (a + b);
  }
  return theta;
}

}  // namespace

void validate(const ProxQuery& q) {
  if (!std::isfinite(q.z_hat) || !std::isfinite(q.lambda)) {
    throw DomainError("prox: z_hat and lambda must be finite");
  }
  if (q.lambda < 0.0) throw ArgumentError("prox: lambda must be >= 0");
}

double prox_objective(const ProxQuery& q, double theta) {
  const double r = q.z_hat - theta;
  return 0.5 * r * r + q.lambda * eval(q.params, theta);
}

double prox_solve(const ProxQuery& q) {
  validate(q);
  if (q.lambda == 0.0) return q.z_hat;
  if (q.z_hat == 0.0) return 0.0;

  // The problem is odd in z_hat; solve for |z_hat| so paths are exactly odd.
  const ProxQuery pos{std::abs(q.z_hat), q.lambda, q.params};
  const double lo = -1.0;
  const double hi = pos.z_hat + 1.0;
  const double h = (hi - lo) / (kCoarseGridPoints - 1);

  std::vector<double> grid(kCoarseGridPoints);
  std::vector<double> values(kCoarseGridPoints);
  for (int i = 0; i < kCoarseGridPoints; ++i) {
    grid[i] = i + 1 == kCoarseGridPoints ? hi : lo + i * h;
    values[i] = prox_objective(pos, grid[i]);
  }

  Candidate best{0.0, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < kCoarseGridPoints; ++i) {
    const bool left_ok = i == 0 || values[i] <= values[i - 1];
    const bool right_ok =
        i + 1 == kCoarseGridPoints || values[i] <= values[i + 1];
    if (!left_ok || !right_ok) continue;
    const double a = grid[i == 0 ? 0 : i - 1];
    const double b = grid[i + 1 == kCoarseGridPoints ? i : i + 1];
    const double theta = refine(pos, a, b);
    const Candidate c{theta, prox_objective(pos, theta)};
    if (better(c, best)) best = c;
  }
  return std::signbit(q.z_hat) ? -best.theta : best.theta;
}

double prox_oracle(const ProxQuery& q) {
  validate(q);
  const double half_width = std::abs(q.z_hat) + 1.0;
  const auto steps = static_cast<std::size_t>(
      std::ceil(2.0 * half_width / kOracleStep));
  Candidate best{0.0, std::numeric_limits<double>::infinity()};
  for (std::size_t k = 0; k <= steps; ++k) {
    const double theta = -half_width + static_cast<double>(k) * kOracleStep;
    const Candidate c{theta, prox_objective(q, theta)};
    if (better(c, best)) best = c;
  }
  return best.theta;
}

SolutionPath solution_path(double lambda, const PenaltyParams& params,
                           double z_min, double z_max, int n_points) {
  if (!std::isfinite(z_min) || !std::isfinite(z_max)) {
    throw DomainError("solution_path: grid bounds must be finite");
  }
  if (!(z_min < z_max)) {
    throw ArgumentError("solution_path: z_min must be < z_max");
  }
  if (n_points < 2) {
    throw ArgumentError("solution_path: need at least 2 grid points");
  }
  SolutionPath path{{}, {}, lambda, params};
  path.z_grid.reserve(n_points);
  path.theta_values.reserve(n_points);
  const double h = (z_max - z_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double z = i + 1 == n_points ? z_max : z_min + i * h;
    path.z_grid.push_back(z);
    path.theta_values.push_back(prox_solve({z, lambda, params}));
  }
  return path;
}

}  // namespace foothill
