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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "foothill/errors.hpp"
#include "oracles.hpp"

namespace foothill {
namespace {

using testing::central_difference;

// Values below were computed with 40-digit mpmath.
constexpr double kTanh1 = 0.76159415595576488812;
constexpr double kGradAlpha1Beta1At2 = 1.1815684975697909575;
constexpr double kSaddleU = 2.3993572805154676678;
constexpr double kRidgeGapAlpha16 = 1.8789941921762264641e-7;
constexpr double kRidgeGapRatio32Over16 = 0.062619857803893807116;
constexpr double kTaylor6GapAlpha16 = -3.2116747681577137409e-9;

PenaltyParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> log_alpha(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> log_beta(std::log(0.1), std::log(4.0));
  return {std::exp(log_alpha(rng)), std::exp(log_beta(rng))};
}

TEST(PenaltyParamsTest, RejectsNonPositiveOrNonFinite) {
  EXPECT_THROW(PenaltyParams(0.0, 1.0), ArgumentError);
  EXPECT_THROW(PenaltyParams(1.0, -1.0), ArgumentError);
  EXPECT_THROW(PenaltyParams(std::nan(""), 1.0), ArgumentError);
  EXPECT_THROW(PenaltyParams(1.0, std::numeric_limits<double>::infinity()),
               ArgumentError);
  const PenaltyParams p(2.0, 3.0);
  EXPECT_EQ(p.alpha(), 2.0);
  EXPECT_EQ(p.beta(), 3.0);
}

TEST(EvalTest, Examples) {
  EXPECT_EQ(eval({1.0, 2.0}, 0.0), 0.0);
  EXPECT_NEAR(eval({1.0, 2.0}, 1.0), kTanh1, 1e-15);
  EXPECT_NEAR(eval({1.0, 1.0}, kSaddleU), 2.0, 1e-14);
}

TEST(EvalTest, NonFiniteIsDomainError) {
  const PenaltyParams p(1.0, 1.0);
  for (double bad : {std::nan(""), std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity()}) {
    EXPECT_THROW(eval(p, bad), DomainError);
    EXPECT_THROW(grad(p, bad), DomainError);
    EXPECT_THROW(hess(p, bad), DomainError);
  }
}

TEST(EvalTest, SymmetricNonNegativeAndZeroOnlyAtOrigin) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> x_dist(0.0, 20.0);
  for (int i = 0; i < 2000; ++i) {
    const auto p = random_params(rng);
    const double x = x_dist(rng);
    const double v = eval(p, x);
    EXPECT_EQ(std::bit_cast<std::uint64_t>(v),
              std::bit_cast<std::uint64_t>(eval(p, -x)));
    EXPECT_GT(v, 0.0) << "x=" << x;
  }
  EXPECT_EQ(eval({3.0, 0.5}, 0.0), 0.0);
  EXPECT_GT(eval({1.0, 1.0}, 1e-150), 0.0);
}

TEST(EvalTest, MatchesUnsaturatedFormulaAcrossSaturationThreshold) {
  const PenaltyParams p(1.5, 2.0);
  for (double x : {19.0, 19.999, 20.0, 20.001, 25.0, -20.001}) {
    EXPECT_NEAR(eval(p, x), testing::foothill_reference(1.5, 2.0, x),
                1e-14 * std::abs(x));
  }
}

TEST(GradTest, Examples) {
  EXPECT_EQ(grad({1.0, 1.0}, 0.0), 0.0);
  EXPECT_NEAR(grad({1.0, 1.0}, 2.0), kGradAlpha1Beta1At2, 1e-15);
}

TEST(GradTest, OddFunction) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> x_dist(-30.0, 30.0);
  for (int i = 0; i < 500; ++i) {
    const auto p = random_params(rng);
    const double x = x_dist(rng);
    EXPECT_EQ(grad(p, -x), -grad(p, x));
  }
}

TEST(GradTest, MatchesCentralDifferences) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> x_dist(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_params(rng);
    const double x = x_dist(rng);
    const double fd = central_difference([&](double t) { return eval(p, t); }, x);
    EXPECT_NEAR(grad(p, x), fd, 1e-6)
        << "alpha=" << p.alpha() << " beta=" << p.beta() << " x=" << x;
  }
}

TEST(HessTest, Examples) {
  EXPECT_DOUBLE_EQ(hess({1.0, 1.0}, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(hess({2.0, 3.0}, 0.0), 6.0);
  EXPECT_NEAR(hess({1.0, 1.0}, kSaddleU), 0.0, 1e-9);
}

TEST(HessTest, OriginCurvatureMatchesFiniteDifferencesOfGrad) {
  for (const PenaltyParams p : {PenaltyParams(1.0, 1.0), PenaltyParams(2.0, 3.0)}) {
    const double fd = central_difference([&](double t) { return grad(p, t); }, 0.0);
    EXPECT_NEAR(hess(p, 0.0), fd, 1e-6);
  }
}

TEST(HessTest, MatchesCentralDifferencesAndIsEven) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> x_dist(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_params(rng);
    const double x = x_dist(rng);
    const double fd = central_difference([&](double t) { return grad(p, t); }, x);
    EXPECT_NEAR(hess(p, x), fd, 1e-6)
        << "alpha=" << p.alpha() << " beta=" << p.beta() << " x=" << x;
    EXPECT_EQ(hess(p, x), hess(p, -x));
  }
}

TEST(HessTest, PositiveInsideSaddleNegativeOutside) {
  const PenaltyParams p(1.3, 0.7);
  const double x0 = saddle(p).x0;
  for (double f : {0.0, 0.25, 0.5, 0.9, 0.999}) {
    EXPECT_GT(hess(p, f * x0), 0.0);
    EXPECT_GT(hess(p, -f * x0), 0.0);
  }
  for (double f : {1.001, 1.5, 3.0, 10.0}) {
    EXPECT_LT(hess(p, f * x0), 0.0);
    EXPECT_LT(hess(p, -f * x0), 0.0);
  }
}

TEST(SaddleTest, Examples) {
  const auto s11 = saddle({1.0, 1.0});
  EXPECT_NEAR(s11.x0, kSaddleU, 1e-12);
  EXPECT_EQ(s11.value, 2.0);

  const auto s12 = saddle({1.0, 2.0});
  EXPECT_NEAR(s12.x0, kSaddleU / 2.0, 1e-12);
  EXPECT_EQ(s12.value, 1.0);

  EXPECT_EQ(saddle({4.0, 0.5}).value, 16.0);
}

TEST(SaddleTest, ResidualAndSignChange) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_params(rng);
    const auto s = saddle(p);
    const double u = p.beta() * s.x0;
    EXPECT_GE(u, 2.39);
    EXPECT_LE(u, 2.41);
    EXPECT_LT(std::abs(2.0 - u * std::tanh(u / 2.0)), 1e-12);
    EXPECT_NEAR(hess(p, s.x0), 0.0, 1e-9);
    EXPECT_GT(hess(p, s.x0 * (1 - 1e-6)), 0.0);
    EXPECT_LT(hess(p, s.x0 * (1 + 1e-6)), 0.0);
    EXPECT_NEAR(eval(p, s.x0), s.value, 1e-12 * s.value);
  }
}

TEST(TaylorTest, RejectsUnsupportedOrder) {
  for (int order : {0, 1, 3, 5, 8}) {
    EXPECT_THROW(taylor_eval({1.0, 2.0}, 0.5, order), ArgumentError);
  }
}

TEST(TaylorTest, Examples) {
  for (int order : {2, 4, 6}) EXPECT_EQ(taylor_eval({1.0, 2.0}, 0.0, order), 0.0);
  for (double x : {-1.5, 0.3, 2.0}) {
    EXPECT_DOUBLE_EQ(taylor_eval({1.0, 2.0}, x, 2), x * x);
  }
  const PenaltyParams ridge_like(16.0, 0.125);
  const double diff = eval(ridge_like, 1.0) - taylor_eval(ridge_like, 1.0, 6);
  EXPECT_LT(std::abs(diff), 1e-4);
  EXPECT_NEAR(diff, kTaylor6GapAlpha16, 1e-13);
}

TEST(TaylorTest, HigherOrdersConvergeNearOrigin) {
  const PenaltyParams p(1.0, 1.0);
  const double x = 0.3;
  const double e2 = std::abs(eval(p, x) - taylor_eval(p, x, 2));
  const double e4 = std::abs(eval(p, x) - taylor_eval(p, x, 4));
  const double e6 = std::abs(eval(p, x) - taylor_eval(p, x, 6));
  EXPECT_LT(e4, e2);
  EXPECT_LT(e6, e4);
}

TEST(RidgeGapTest, Preconditions) {
  EXPECT_THROW(ridge_gap({16.0, 0.2}, 1.0), ArgumentError);
  EXPECT_THROW(ridge_gap({16.0, 0.125}, 0.0), ArgumentError);
  EXPECT_THROW(ridge_gap({16.0, 0.125}, -1.0), ArgumentError);
}

TEST(RidgeGapTest, Examples) {
  const double gap = ridge_gap({16.0, 0.125}, 1.0);
  EXPECT_NEAR(gap, kRidgeGapAlpha16, 1e-12);
  const double leading = ridge_gap_leading_term(16.0, 1.0);
  EXPECT_NEAR(leading, 1.0 / (81.0 * 65536.0), 1e-22);
  EXPECT_GT(gap, leading / 2.0);
  EXPECT_LT(gap, leading * 2.0);

  EXPECT_LT(ridge_gap({16.0, 0.125}, 1e-3), 1e-20);

  const double ratio = ridge_gap({32.0, 2.0 / 32.0}, 1.0) / gap;
  EXPECT_NEAR(ratio, kRidgeGapRatio32Over16, 1e-4);
  EXPECT_NEAR(ratio, 1.0 / 16.0, 0.02 / 16.0);
}

TEST(NamedCaseTest, Parameterizations) {
  const auto canonical = named_case("canonical");
  const auto huber = named_case("huber_like");
  for (double x : {-3.0, -0.2, 0.0, 0.7, 4.0}) {
    EXPECT_NEAR(eval(canonical, x), x * std::tanh(x), 1e-15);
    EXPECT_NEAR(eval(huber, x), 16.0 * x * std::tanh(x / 16.0), 1e-14);
  }
  EXPECT_EQ(named_case(NamedCase::kRidgeLimit).beta(), 2.0 / 1e3);
  EXPECT_EQ(named_case("ridge_limit"), named_case(NamedCase::kRidgeLimit));
  EXPECT_THROW(named_case("elastic_net"), ArgumentError);
}

TEST(NamedCaseTest, LassoLimitTracksAbsoluteValue) {
  const auto lasso = named_case("lasso_limit");
  for (int i = 0; i <= 1000; ++i) {
    const double mag = 0.01 * std::pow(1000.0, i / 1000.0);
    EXPECT_LT(std::abs(eval(lasso, mag) - mag), 1e-3);
    EXPECT_LT(std::abs(eval(lasso, -mag) - mag), 1e-3);
  }
}

TEST(NamedCaseTest, RidgeLimitTracksSquare) {
  const auto ridge = named_case("ridge_limit");
  for (double x = -5.0; x <= 5.0; x += 0.01) {
    EXPECT_LT(std::abs(eval(ridge, x) - x * x), 3e-4);
  }
}

TEST(PenaltyProperties, QuasiconvexSignPattern) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_params(rng);
    for (int k = 0; k < 1000; ++k) {
      const double x = 1e-6 * std::pow(1e9, k / 999.0) / p.beta();
      EXPECT_GT(grad(p, x), 0.0);
      EXPECT_LT(grad(p, -x), 0.0);
    }
  }
}

TEST(PenaltyProperties, LassoLimitGapShrinksWithBeta) {
  double previous = std::numeric_limits<double>::infinity();
  for (double beta : {1.0, 10.0, 100.0, 1000.0}) {
    const PenaltyParams p(1.0, beta);
    double sup = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      const double x = -10.0 + i * 1e-3;
      sup = std::max(sup, std::abs(eval(p, x) - std::abs(x)));
    }
    EXPECT_LT(sup, previous);
    EXPECT_LE(sup, 2.0 / beta);
    previous = sup;
  }
  EXPECT_LT(previous, 2e-3);
}

TEST(PenaltyProperties, LinearAsymptote) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_params(rng);
    const double x = 50.0 / p.beta();
    EXPECT_LT(std::abs(eval(p, x) - p.alpha() * x), 1e-8);
    EXPECT_LT(std::abs(eval(p, -x) - p.alpha() * x), 1e-8);
  }
}

TEST(PenaltyProperties, BoundedBySquareWhenBetaIsTwoOverAlpha) {
  for (double alpha : {0.5, 1.0, 16.0, 100.0}) {
    const PenaltyParams p(alpha, 2.0 / alpha);
    for (int i = 0; i < 1000; ++i) {
      const double x = -50.0 + 100.0 * i / 999.0;
      EXPECT_LE(eval(p, x), x * x * (1 + 1e-15));
    }
  }
}

}  // namespace
}  // namespace foothill
