#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace eikit {

/// Unit roundoff for binary64.
inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

/// Euler–Mascheroni constant, rounded to binary64. The series evaluators use
/// this directly so they never depend on quadrature at call time; the
/// harmonic-number oracle in verify.hpp reproduces it.
inline constexpr double kEulerGamma = 0.57721566490153286060;

/// Truncation policy shared by all series evaluators.
struct SeriesPolicy {
  double abs_tol = 1e-14;
  double rel_tol = 0.0;
  std::int64_t max_terms = 1000;

  /// Throws DomainError unless abs_tol > 0, rel_tol >= 0 and max_terms >= 1.
  void validate() const;
};

enum class Method { PuiseuxSeries, Lemma1Series, CpvQuadrature };

std::string_view method_name(Method m);

/// A function value together with a bound on its total error.
struct EvalResult {
  double value = 0.0;
  double error_bound = 0.0;
  Method method = Method::PuiseuxSeries;
  std::int64_t work = 0;  // terms summed or integrand evaluations

  // Only the integration-by-parts route sets these; see lemma1_series().
  double amplification = 1.0;
  bool cancellation_warning = false;
};

struct QuadConfig {
  double abs_tol = 1e-12;
  std::int64_t max_subdivisions = 2000;
  double tail_cut_tol = 1e-14;

  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
};

}  // namespace eikit
