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

#include "foothill/penalty.hpp"

#include <cmath>
#include <string>

#include "foothill/errors.hpp"

namespace foothill {
namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be finite");
  }
}

// tanh(u) and sech^2(u), saturated for |u| > kTanhSaturation.
struct Hyperbolic {
  double tanh;
  double sech2;
};

double saturated_tanh(double u) {
  if (u > kTanhSaturation) return 1.0;
  if (u < -kTanhSaturation) return -1.0;
  return std::tanh(u);
}

Hyperbolic hyperbolic(double u) {
  if (u > kTanhSaturation) return {1.0, 0.0};
  if (u < -kTanhSaturation) return {-1.0, 0.0};
  const double t = std::tanh(u);
  const double c = std::cosh(u);
  return {t, 1.0 / (c * c)};
}

// 2 - u tanh(u/2) and its derivative in u.
double inflection_residual(double u) { return 2.0 - u * std::tanh(0.5 * u); }

double inflection_residual_slope(double u) {
  const auto h = hyperbolic(0.5 * u);
  return -h.tanh - 0.5 * u * h.sech2;
}

double solve_inflection() {
  // Residual is decreasing on [1, 10]: +1.07 at u = 1, about -8 at u = 10.
  double lo = 1.0;
  double hi = 10.0;
  double u = 2.4;
  for (int iter = 0; iter < 200; ++iter) {
    const double r = inflection_residual(u);
    if (r == 0.0) return u;
    if (r > 0.0) {
      lo = u;
    } else {
      hi = u;
    }
    if (std::abs(r) < 1e-15 || hi - lo < 4e-16 * hi) break;
    double next = u - r / inflection_residual_slope(u);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    u = next;
  }
  return u;
}

template <typename F>
double simpson_step(const F& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double tol,
                    int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  constexpr int kMaxDepth = 50;
  return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, kMaxDepth);
}

}  // namespace

PenaltyParams::PenaltyParams(double alpha, double beta)
    : alpha_(alpha), beta_(beta) {
  if (!(std::isfinite(alpha) && alpha > 0.0)) {
    throw ArgumentError("alpha must be a positive finite number");
  }
  if (!(std::isfinite(beta) && beta > 0.0)) {
    throw ArgumentError("beta must be a positive finite number");
  }
}

double eval(const PenaltyParams& params, double x) {
  require_finite(x, "eval");
  return params.alpha() * x * saturated_tanh(0.5 * params.beta() * x);
}

double grad(const PenaltyParams& params, double x) {
  require_finite(x, "grad");
  const double a = params.alpha();
  const double b = params.beta();
  const auto h = hyperbolic(0.5 * b * x);
  return a * h.tanh + 0.5 * a * b * x * h.sech2;
}

double hess(const PenaltyParams& params, double x) {
  require_finite(x, "hess");
  const double a = params.alpha();
  const double b = params.beta();
  const auto h = hyperbolic(0.5 * b * x);
  return 0.5 * a * b * h.sech2 * (2.0 - b * x * h.tanh);
}

double eval_increment(const PenaltyParams& params, double x, double dx) {
  require_finite(x, "eval_increment");
  require_finite(dx, "eval_increment");
  const double b = params.beta();
  const double u_old = 0.5 * b * x;
  const double u_new = 0.5 * b * (x + dx);
  const double t_new = saturated_tanh(u_new);
  // tanh(u_new) - tanh(u_old) = sinh(u_new - u_old) / (cosh(u_new) cosh(u_old))
  double t_diff;
  if (std::abs(u_old) > kTanhSaturation || std::abs(u_new) > kTanhSaturation) {
    t_diff = t_new - saturated_tanh(u_old);
  } else {
    t_diff = std::sinh(0.5 * b * dx) / (std::cosh(u_new) * std::cosh(u_old));
  }
  return params.alpha() * (dx * t_new + x * t_diff);
}

SaddleInfo saddle(const PenaltyParams& params) {
  static const double u0 = solve_inflection();
  return {u0 / params.beta(), 2.0 * params.alpha() / params.beta()};
}

double taylor_eval(const PenaltyParams& params, double x, int order) {
  if (order != 2 && order != 4 && order != 6) {
    throw ArgumentError("taylor_eval: order must be 2, 4 or 6");
  }
  require_finite(x, "taylor_eval");
  const double a = params.alpha();
  const double b = params.beta();
  const double x2 = x * x;
  double out = 0.5 * a * b * x2;
  if (order >= 4) out -= a * b * b * b / 24.0 * x2 * x2;
  if (order >= 6) out += a * std::pow(b, 5) / 240.0 * x2 * x2 * x2;
  return out;
}

double ridge_gap(const PenaltyParams& params, double c) {
  if (std::abs(params.beta() - 2.0 / params.alpha()) > 1e-12) {
    throw ArgumentError("ridge_gap: requires beta == 2 / alpha");
  }
  if (!(std::isfinite(c) && c > 0.0)) {
    throw ArgumentError("ridge_gap: c must be a positive finite number");
  }
  auto integrand = [&params](double x) {
    const double d = x * x - eval(params, x);
    return d * d;
  };
  return adaptive_simpson(integrand, 0.0, c, 1e-12);
}

double ridge_gap_leading_term(double alpha, double c) {
  return std::pow(c, 9) / (81.0 * std::pow(alpha, 4));
}

PenaltyParams named_case(NamedCase which) {
  switch (which) {
    case NamedCase::kLassoLimit:
      return {1.0, 1e4};
    case NamedCase::kRidgeLimit:
      return {1e3, 2.0 / 1e3};
    case NamedCase::kHuberLike:
      return {16.0, 2.0 / 16.0};
    case NamedCase::kCanonical:
      return {1.0, 2.0};
  }
  throw ArgumentError("named_case: unknown case");
}

PenaltyParams named_case(std::string_view name) {
  if (name == "lasso_limit") return named_case(NamedCase::kLassoLimit);
  if (name == "ridge_limit") return named_case(NamedCase::kRidgeLimit);
  if (name == "huber_like") return named_case(NamedCase::kHuberLike);
  if (name == "canonical") return named_case(NamedCase::kCanonical);
  throw ArgumentError("named_case: unknown case '" + std::string(name) + "'");
}

}  // namespace foothill
