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

// The foothill penalty p(x) = alpha * x * tanh(beta * x / 2) and its calculus.
//
// alpha > 0 shapes the penalty (its linear asymptote is alpha * |x|), beta > 0
// sets the scale at which it switches from quadratic to linear growth. For
// alpha = 1 and beta -> inf it tends to |x|; for beta = 2 / alpha and large
// alpha it tends to x^2 on any fixed interval.

#pragma once

#include <string_view>

namespace foothill {

class PenaltyParams {
 public:
  // Throws ArgumentError unless alpha > 0 and beta > 0 (both finite).
  PenaltyParams(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  friend bool operator==(const PenaltyParams&, const PenaltyParams&) = default;

 private:
  double alpha_;
  double beta_;
};

// Positive inflection point of the penalty. The curvature changes sign at
// +/- x0 and the penalty equals 2 * alpha / beta there. beta * x0 is the
// root of 2 - u tanh(u / 2), about 2.3994, found by safeguarded Newton.
struct SaddleInfo {
  double x0;
  double value;
};

// Above this |beta * x / 2|, tanh is taken as +/-1 and sech^2 as 0.
inline constexpr double kTanhSaturation = 20.0;

// All three throw DomainError for non-finite x.
double eval(const PenaltyParams& params, double x);
double grad(const PenaltyParams& params, double x);
double hess(const PenaltyParams& params, double x);

// p(x + dx) - p(x), evaluated without the cancellation of a plain
// difference. Consistent with eval's tanh saturation.
double eval_increment(const PenaltyParams& params, double x, double dx);

SaddleInfo saddle(const PenaltyParams& params);

// Even Taylor polynomial of the penalty about 0, truncated after the x^order
// term. order must be 2, 4 or 6 (ArgumentError otherwise).
double taylor_eval(const PenaltyParams& params, double x, int order);

// Integral over [0, c] of (x^2 - p(x))^2, by adaptive Simpson quadrature.
// Requires beta == 2 / alpha to within 1e-12 and c > 0 (ArgumentError).
double ridge_gap(const PenaltyParams& params, double c);

// Leading-order closed form of ridge_gap: c^9 / (81 alpha^4).
double ridge_gap_leading_term(double alpha, double c);

enum class NamedCase { kLassoLimit, kRidgeLimit, kHuberLike, kCanonical };

// Finite stand-ins for the classical limits:
//   lasso_limit  (1, 1e4)        ~ |x|
//   ridge_limit  (1e3, 2 / 1e3)  ~ x^2
//   huber_like   (16, 2 / 16)    = 16 x tanh(x / 16)
//   canonical    (1, 2)          = x tanh(x)
PenaltyParams named_case(NamedCase which);

// Accepts "lasso_limit", "ridge_limit", "huber_like", "canonical".
// Throws ArgumentError for anything else.
PenaltyParams named_case(std::string_view name);

}  // namespace foothill
