#pragma once

#include <functional>

#include "eikit/types.hpp"

namespace eikit {

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss–Kronrod (7/15) quadrature on [a, b].
///
/// Each subinterval's error estimate is |K15 - G7|. The subinterval with the
/// largest estimate is bisected until the summed estimate (plus a roundoff
/// term of 2u * integral of |f|) drops to cfg.abs_tol, or until
/// cfg.max_subdivisions bisections have been spent, in which case
/// converged is false. Never throws on non-convergence; callers decide.
/// Throws DomainError if a >= b, either limit is not finite, or f returns a
/// non-finite value.
QuadResult integrate_adaptive(const Integrand& f, double a, double b, const QuadConfig& cfg = {});

/// g(t) / (t - c) with a simple pole at c.
struct RegularizedPoleIntegrand {
  Integrand numerator;
  double pole_location = 0.0;
  /// lim_{s->0} (g(c+s) - g(c-s)) / s, i.e. 2 g'(c).
  double limit_at_pole = 0.0;
};

/// Principal value of int_a^b g(t)/(t-c) dt.
///
/// With r = min(c-a, b-c) the symmetric window [c-r, c+r] becomes the
/// ordinary integral int_0^r (g(c+s) - g(c-s))/s ds, whose integrand is
/// replaced by limit_at_pole within 1e-12 * max(1, r) of s = 0. Whatever is
/// left of [a, b] on one side is integrated directly. Each piece gets half of
/// cfg.abs_tol.
///
/// Throws DomainError unless a < c < b, ConsistencyError if limit_at_pole
/// disagrees with the numerator's symmetric difference at h = 1e-4, and
/// NonConvergence if either piece fails to converge.
QuadResult cpv_integrate(const RegularizedPoleIntegrand& g, double a, double b,
                         const QuadConfig& cfg = {});

/// Ei(x) straight from its definition as a principal-value integral of e^t/t
/// over (-inf, x].
///
/// x < 0: the integral is ordinary. It is cut at the first T <= min(x, -1)
/// (stepping down by 1) with e^T/|T| <= tail_cut_tol; that bound on the
/// discarded piece is added to error_bound.
/// x > 0: Ei(-b) by the same route plus the principal value over [-b, x],
/// with b = max(x, 1).
EvalResult ei_quadrature(double x, const QuadConfig& cfg = {});

/// int_0^1 (1 - e^{-t} - e^{-1/t}) / t dt, which equals gamma.
QuadResult gamma_integral(const QuadConfig& cfg = {});
double gamma_integrand(double t);

/// int_0^1 (1 - e^{1-t}) / (1 - t) dt, which equals gamma - Ei(1).
QuadResult lemma2_integral(const QuadConfig& cfg = {});
double lemma2_integrand(double t);

/// Distance from a removable singularity inside which integrands are
/// replaced by their analytic limit.
inline constexpr double kRemovableGuard = 1e-12;

}  // namespace eikit
