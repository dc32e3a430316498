#pragma once

#include <cstdint>

#include "eikit/rational.hpp"
#include "eikit/types.hpp"

namespace eikit {

/// H_n = 1 + 1/2 + ... + 1/n exactly; H_0 = 0.
BigRational harmonic(std::int64_t n);

/// H_n as an unreduced fraction p/q, built by binary splitting. Cheap enough
/// for n in the millions where reducing to lowest terms is not.
struct HarmonicFraction {
  BigInteger numerator;
  BigInteger denominator;
};
HarmonicFraction harmonic_unreduced(std::int64_t n);

/// sum_{n>=1} x^n / (n * n!)
///
/// Stops at the first N with |t_N| <= tol/2 and |x|/(N+1) <= 1/2. Beyond that
/// point consecutive terms shrink by at least half, so the discarded tail is
/// at most 2|t_{N+1}|; that bound plus a roundoff model for the term
/// recurrence and the compensated sum is reported as error_bound.
/// Throws NonConvergence if max_terms is reached first.
EvalResult puiseux_tail(double x, const SeriesPolicy& policy = {});

/// Ei(x) = gamma + log|x| + puiseux_tail(x). Throws DomainError at x = 0.
EvalResult ei_series(double x, const SeriesPolicy& policy = {});

/// Ei(1) = gamma + sum 1/(n * n!).
EvalResult ei_one(const SeriesPolicy& policy = {});

/// n-fold antiderivative of 1/x: x^n/n! * (log|x| - H_n).
double iterated_antiderivative_log(std::int64_t n, double x);

/// Largest |x| for which the integration-by-parts route is considered well
/// conditioned. Larger arguments are still evaluated.
inline constexpr double kLemma1MaxArgument = 4.0;

/// Amplification above which EvalResult::cancellation_warning is set.
inline constexpr double kCancellationWarningThreshold = 1e3;

/// int_1^x e^t/t dt by repeated integration by parts:
///
///   log|x| + e^x * sum_{n>=0} (-1)^{n+1} H_n x^n/n! + e * sum_{n>=0} (-1)^n H_n/n!
///
/// Both alternating series are summed in exact rationals and rounded once.
/// amplification is max over the two series of sum|term| / |sum term|;
/// error_bound charges one rounding of the absolute-term sum, so it grows
/// with the amplification even though the rational sums themselves are exact.
EvalResult lemma1_series(double x, const SeriesPolicy& policy = {});

/// e * sum_{n>=0} (-1)^n H_n / n!, which equals gamma - Ei(1).
EvalResult alternating_harmonic_exp_sum(const SeriesPolicy& policy = {});

/// sum_{k=0}^{n} C(n,k) H_k (-1)^{k+1}; equals 1/n for n >= 1.
BigRational binomial_harmonic_lhs(std::int64_t n);

/// Coefficient of x^n in e^x * sum_k (-1)^{k+1} H_k x^k / k!, i.e.
/// sum_{k=0}^{n} (-1)^{k+1} H_k / (k! (n-k)!). Equals 1/(n * n!).
BigRational convolution_coefficient_check(std::int64_t n);

}  // namespace eikit
