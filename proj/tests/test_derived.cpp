#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "eikit/derived.hpp"
#include "eikit/errors.hpp"
#include "eikit/quadrature.hpp"

using namespace eikit;

namespace {

// mpmath, 40 digits
constexpr double kLiTwo = 1.0451637801174927848;
constexpr double kSoldner = 1.4513692348833810503;
constexpr double kExpSquareAtOne = 1.4626517459071816088;
constexpr double kGoodwinStatonAtOne = 0.60513365250334458174;

}  // namespace

TEST(Li, KnownValues) {
  const auto at_e = li(std::numbers::e);
  EXPECT_EQ(std::round(at_e.value * 1000) / 1000, 1.895);

  const auto two = li(2.0);
  EXPECT_NEAR(two.value, kLiTwo, two.error_bound);
  const auto two_q = li_quadrature(2.0);
  EXPECT_NEAR(two_q.value, kLiTwo, two_q.error_bound);
  EXPECT_EQ(two_q.method, Method::CpvQuadrature);
}

TEST(Li, DomainErrors) {
  EXPECT_THROW(li(1.0), DomainError);
  EXPECT_THROW(li(0.0), DomainError);
  EXPECT_THROW(li(-2.0), DomainError);
  EXPECT_THROW(li_quadrature(1.0), DomainError);
}

TEST(Li, BelowOneIsSupported) {
  // li(1/2) = Ei(-log 2)
  const auto r = li(0.5);
  EXPECT_NEAR(r.value, li_quadrature(0.5).value, 1e-11);
  EXPECT_LT(r.value, 0.0);
}

TEST(Li, IncreasingAboveOne) {
  double previous = li(1.05).value;
  for (double x = 1.1; x <= 30.0; x *= 1.1) {
    const double current = li(x).value;
    EXPECT_GT(current, previous) << "x=" << x;
    previous = current;
  }
}

TEST(SoldnerConstant, RootOfLi) {
  constexpr double tol = 1e-12;
  const double mu = soldner_constant(tol);
  EXPECT_EQ(std::round(mu * 1000) / 1000, 1.451);
  EXPECT_NEAR(mu, kSoldner, 1e-12);
  EXPECT_LE(std::fabs(li(mu).value), 10 * tol / std::fabs(std::log(mu)));
  EXPECT_LE(std::fabs(li(mu).value), 1e-9);
  EXPECT_LE(std::fabs(li_quadrature(mu).value), 1e-9);
}

TEST(SoldnerConstant, CoarseToleranceStillBrackets) {
  const double mu = soldner_constant(1e-3);
  EXPECT_NEAR(mu, kSoldner, 1e-3);
  EXPECT_THROW(soldner_constant(0.0), DomainError);
}

TEST(ExpSquareIntegral, BasicProperties) {
  EXPECT_EQ(exp_square_integral(0.0).value, 0.0);
  for (double x : {0.3, 1.0, 2.5, 6.0}) {
    EXPECT_EQ(exp_square_integral(-x).value, -exp_square_integral(x).value);
  }
  EXPECT_THROW(exp_square_integral(6.5), DomainError);
  EXPECT_THROW(exp_square_integral(-7.0), DomainError);
}

TEST(ExpSquareIntegral, MatchesQuadrature) {
  const auto r = exp_square_integral(1.0);
  EXPECT_NEAR(r.value, kExpSquareAtOne, r.error_bound + 1e-16);
  for (double x : {0.5, 2.0, 3.0}) {
    const auto series = exp_square_integral(x);
    QuadConfig cfg;
    cfg.abs_tol = 1e-12 * std::exp(x * x);
    const auto quad = integrate_adaptive([](double t) { return std::exp(t * t); }, 0.0, x, cfg);
    EXPECT_NEAR(series.value, quad.value, series.error_bound + quad.error_estimate) << "x=" << x;
  }
}

TEST(ExpSquareIntegral, DerivativeIsIntegrand) {
  for (double x : {0.5, 1.0}) {
    const double h = 1e-5;
    const double fd =
        (exp_square_integral(x + h).value - exp_square_integral(x - h).value) / (2 * h);
    EXPECT_LE(std::fabs(fd - std::exp(x * x)), 1e-6 * std::exp(x * x)) << "x=" << x;
  }
}

TEST(GoodwinStaton, RightSideKnownValue) {
  const auto r = goodwin_staton_rhs(1.0);
  EXPECT_NEAR(r.value, kGoodwinStatonAtOne, r.error_bound + 1e-16);
  EXPECT_THROW(goodwin_staton_rhs(0.0), DomainError);
  EXPECT_THROW(goodwin_staton_rhs(3.5), DomainError);
}

TEST(GoodwinStaton, LeftSideBounds) {
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const auto r = goodwin_staton_lhs(x);
    EXPECT_TRUE(r.converged);
    EXPECT_GT(r.value, 0.0);
    EXPECT_LT(r.value, std::sqrt(std::numbers::pi) / (2 * x));
  }
  EXPECT_THROW(goodwin_staton_lhs(0.0), DomainError);
  EXPECT_THROW(goodwin_staton_lhs(-1.0), DomainError);
}

TEST(GoodwinStaton, IdentityHolds) {
  for (double x : {0.5, 1.0, 2.0, 3.0}) {
    const auto c = goodwin_staton_check(x);
    EXPECT_LE(c.abs_diff(), c.lhs_error + c.rhs_error + 1e-9) << "x=" << x;
    EXPECT_LE(c.abs_diff(), 1e-8) << "x=" << x;
  }
}

TEST(GoodwinStaton, LogarithmicGrowthNearZero) {
  double previous = goodwin_staton_rhs(0.1).value;
  for (double x : {1e-2, 1e-3, 1e-4}) {
    const auto rhs = goodwin_staton_rhs(x);
    EXPECT_GT(rhs.value, previous);
    EXPECT_NEAR(rhs.value, goodwin_staton_lhs(x).value, 1e-9) << "x=" << x;
    previous = rhs.value;
  }
}

TEST(GoodwinStaton, AbsDiffIsRecomputed) {
  auto c = goodwin_staton_check(1.0);
  c.lhs += 0.5;
  EXPECT_NEAR(c.abs_diff(), 0.5, 1e-8);
}
