#pragma once

#include "eikit/types.hpp"

namespace eikit {

/// li(x) = Ei(log x) by the series route. Defined for x > 0, x != 1; on
/// (0, 1) log x is negative and Ei is an ordinary integral there.
EvalResult li(double x, const SeriesPolicy& policy = {});

/// li(x) = Ei(log x) by principal-value quadrature.
EvalResult li_quadrature(double x, const QuadConfig& cfg = {});

/// Root of li on [1.1, 2]: bisection down to a bracket of width <= tol,
/// then two Newton steps (li'(x) = 1/log x) that are discarded if they leave
/// the bracket.
double soldner_constant(double tol = 1e-12, const SeriesPolicy& policy = {});

/// Largest |x| accepted by exp_square_integral.
inline constexpr double kExpSquareMaxArgument = 6.0;

/// int_0^x e^{t^2} dt = sum_{n>=0} x^{2n+1} / (n! (2n+1)).
/// Odd by construction. Throws DomainError if |x| > 6.
EvalResult exp_square_integral(double x, const SeriesPolicy& policy = {});

/// Largest x accepted by goodwin_staton_rhs (keeps Ei's argument x^2 <= 9).
inline constexpr double kGoodwinStatonMaxArgument = 3.0;

/// e^{-x^2} sqrt(pi) int_0^x e^{t^2} dt - (1/2) e^{-x^2} Ei(x^2), for 0 < x <= 3.
EvalResult goodwin_staton_rhs(double x, const SeriesPolicy& policy = {});

/// int_0^inf e^{-t^2} / (t + x) dt for x > 0, truncated at the first T (in
/// steps of 1/4 from 1) with e^{-T^2} / (2T(T+x)) <= tail_cut_tol; the
/// bound is folded into error_estimate, so the tolerance a converged result
/// meets is abs_tol + tail_cut_tol.
QuadResult goodwin_staton_lhs(double x, const QuadConfig& cfg = {});

struct GoodwinStatonCheck {
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_error = 0.0;
  double rhs_error = 0.0;

  double abs_diff() const;
};

/// Both sides of the Goodwin–Staton identity, computed independently.
/// Throws NonConvergence if the left side's quadrature fails.
GoodwinStatonCheck goodwin_staton_check(double x, const SeriesPolicy& policy = {},
                                        const QuadConfig& cfg = {});

}  // namespace eikit
