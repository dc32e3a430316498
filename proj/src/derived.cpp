#include "eikit/derived.hpp"

#include <cmath>
#include <string>

#include "eikit/compensated_sum.hpp"
#include "eikit/errors.hpp"
#include "eikit/quadrature.hpp"
#include "eikit/series_core.hpp"

namespace eikit {
namespace {

constexpr double u = kUnitRoundoff;
constexpr double kSqrtPi = 1.77245385090551602729816748334114518;

double checked_log(double x, const char* what) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw DomainError(std::string(what) + ": li needs x > 0");
  }
  if (x == 1.0) {
    throw DomainError(std::string(what) + ": li(1) = Ei(0) is undefined");
  }
  return std::log(x);
}

}  // namespace

EvalResult li(double x, const SeriesPolicy& policy) {
  const double lx = checked_log(x, "li");
  EvalResult r = ei_series(lx, policy);
  // Ei'(log x) * (error in log x) = (x / log x) * (u |log x|)
  r.error_bound += u * x;
  return r;
}

EvalResult li_quadrature(double x, const QuadConfig& cfg) {
  const double lx = checked_log(x, "li_quadrature");
  EvalResult r = ei_quadrature(lx, cfg);
  r.error_bound += u * x;
  return r;
}

double soldner_constant(double tol, const SeriesPolicy& policy) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw DomainError("soldner_constant: tol must be positive");
  }
  double lo = 1.1;
  double hi = 2.0;
  double f_lo = li(lo, policy).value;
  const double f_hi = li(hi, policy).value;
  if (!(f_lo < 0.0 && f_hi > 0.0)) {
    throw NonConvergence("soldner_constant: li does not change sign on [1.1, 2]");
  }

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = li(mid, policy).value;
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  double x = 0.5 * (lo + hi);
  for (int step = 0; step < 2; ++step) {
    const double fx = li(x, policy).value;
    if (fx == 0.0) break;
    const double candidate = x - fx * std::log(x);
    if (candidate < lo || candidate > hi) break;
    x = candidate;
  }
  return x;
}

EvalResult exp_square_integral(double x, const SeriesPolicy& policy) {
  policy.validate();
  if (!std::isfinite(x) || std::fabs(x) > kExpSquareMaxArgument) {
    throw DomainError("exp_square_integral: need |x| <= 6");
  }
  const double ax = std::fabs(x);
  const double x2 = ax * ax;
  CompensatedSum sum;
  double weighted = 0.0;
  // x^{2n+1}/n! carried separately from the 1/(2n+1) factor
  double power_over_factorial = ax;

  for (std::int64_t n = 0;; ++n) {
    const double term = power_over_factorial / static_cast<double>(2 * n + 1);
    sum += term;
    weighted += static_cast<double>(n + 1) * term;
    const double next_pf = power_over_factorial * x2 / static_cast<double>(n + 1);

    // t_{m+1}/t_m = x^2 (2m+1) / ((m+1)(2m+3)) < x^2/(m+1), so once
    // x^2/(n+2) <= 1/2 every later ratio is at most 1/2.
    const double target = std::max(policy.abs_tol, policy.rel_tol * sum.value());
    if (term <= target / 2 && x2 / static_cast<double>(n + 2) <= 0.5) {
      const double next = next_pf / static_cast<double>(2 * n + 3);
      const double tail = 2.0 * next * (1.0 + 4.0 * static_cast<double>(n + 2) * u);
      const double error = tail + 2.0 * u * sum.value() + 3.0 * u * weighted;
      const double value = std::signbit(x) ? -sum.value() : sum.value();
      return EvalResult{value, error, Method::PuiseuxSeries, n + 1};
    }
    if (n + 1 >= policy.max_terms) {
      throw NonConvergence("exp_square_integral: " + std::to_string(n + 1) +
                           " terms without meeting tolerance");
    }
    power_over_factorial = next_pf;
  }
}

EvalResult goodwin_staton_rhs(double x, const SeriesPolicy& policy) {
  if (!std::isfinite(x) || !(x > 0.0) || x > kGoodwinStatonMaxArgument) {
    throw DomainError("goodwin_staton_rhs: need 0 < x <= 3");
  }
  const double x2 = x * x;
  const double damp = std::exp(-x2);
  const EvalResult growth = exp_square_integral(x, policy);
  const EvalResult ei = ei_series(x2, policy);

  const double first = damp * kSqrtPi * growth.value;
  const double second = 0.5 * damp * ei.value;
  const double value = first - second;
  // Ei'(x^2) = e^{x^2}/x^2, so rounding x^2 costs (1/2) e^{-x^2} * e^{x^2}/x^2 * u x^2.
  const double error = damp * kSqrtPi * growth.error_bound +
                       0.5 * damp * ei.error_bound + 0.5 * u +
                       4.0 * u * (std::fabs(first) + std::fabs(second)) + u * std::fabs(value);
  return EvalResult{value, error, Method::PuiseuxSeries, growth.work + ei.work};
}

QuadResult goodwin_staton_lhs(double x, const QuadConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw DomainError("goodwin_staton_lhs: need x > 0");
  }
  const auto tail_bound = [x](double t) { return std::exp(-t * t) / (2.0 * t * (t + x)); };
  double cut = 1.0;
  while (tail_bound(cut) > cfg.tail_cut_tol) {
    cut += 0.25;
  }
  QuadResult q =
      integrate_adaptive([x](double t) { return std::exp(-t * t) / (t + x); }, 0.0, cut, cfg);
  q.error_estimate += tail_bound(cut);
  q.converged = q.converged && q.error_estimate <= cfg.abs_tol + cfg.tail_cut_tol;
  return q;
}

double GoodwinStatonCheck::abs_diff() const { return std::fabs(lhs - rhs); }

GoodwinStatonCheck goodwin_staton_check(double x, const SeriesPolicy& policy,
                                        const QuadConfig& cfg) {
  const QuadResult left = goodwin_staton_lhs(x, cfg);
  if (!left.converged) {
    throw NonConvergence("goodwin_staton_lhs: quadrature did not converge");
  }
  const EvalResult right = goodwin_staton_rhs(x, policy);
  return GoodwinStatonCheck{x, left.value, right.value, left.error_estimate, right.error_bound};
}

}  // namespace eikit
