#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "eikit/types.hpp"

namespace eikit {

/// Euler–Mascheroni constant from harmonic numbers alone:
///
///   H_n - log n - 1/(2n) + 1/(12 n^2)
///
/// H_n is built exactly (binary splitting) and the combination is carried out
/// in 256-bit MPFR, then rounded once. Truncation error is about 1/(120 n^4).
/// Shares no code with the series or quadrature routes. Needs n >= 10.
double gamma_reference(std::int64_t n_terms);

/// Bound on |gamma_reference(n) - gamma|: the first omitted Euler–Maclaurin
/// term plus the final rounding.
double gamma_reference_bound(std::int64_t n_terms);

inline constexpr std::int64_t kGammaReferenceTerms = 1'000'000;

/// Added to every floating-point check's combined error bound.
inline constexpr double kToleranceFloor = 1e-12;

struct CheckRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  // false when a component threw; abs_diff is then +inf
  bool diff_finite = true;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckRecord> records;
  bool all_pass = false;
  std::string generated_at;
};

/// Runs every cross-check and returns the records in a fixed order. Check
/// groups run concurrently; component failures become failed records rather
/// than exceptions. Tolerances are (sum of the two sides' error bounds +
/// kToleranceFloor) * tolerance_scale; exact-rational checks use 0.
VerificationReport run_crosschecks(const SeriesPolicy& policy = {}, const QuadConfig& cfg = {},
                                   double tolerance_scale = 1.0);

/// EIKIT_FIXED_TIMESTAMP if set, otherwise the current UTC time (ISO 8601).
std::string report_timestamp();

nlohmann::ordered_json record_to_json(const CheckRecord& record);
nlohmann::ordered_json report_to_json(const VerificationReport& report);

}  // namespace eikit
