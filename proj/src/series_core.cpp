#include "eikit/series_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "eikit/compensated_sum.hpp"
#include "eikit/errors.hpp"

namespace eikit {
namespace {

constexpr double u = kUnitRoundoff;

void require_nonzero_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be finite");
  }
  if (x == 0.0) {
    throw DomainError(std::string(what) +
                      ": Ei is defined on R^x = R \\ {0}; x = 0 is the pole");
  }
}

void split_harmonic(std::int64_t a, std::int64_t b, BigInteger& p, BigInteger& q) {
  // sum_{k=a}^{b-1} 1/k = p/q
  if (b - a == 1) {
    p = 1;
    q = a;
    return;
  }
  const std::int64_t mid = a + (b - a) / 2;
  BigInteger p2, q2;
  split_harmonic(a, mid, p, q);
  split_harmonic(mid, b, p2, q2);
  p *= q2;
  p += p2 * q;
  q *= q2;
}

// sum_{n>=0} s_n H_n x^n / n! in exact rationals, s_n = (-1)^(n + parity).
// Truncated once scale * |t_N| meets the policy and the term ratio bound
// rho_N = (1 + 1/((N+1) H_N)) |x| / (N+1) is at most 1/2; the discarded
// tail is then at most |t_{N+1}| / (1 - rho_N).
struct ExactHarmonicSeries {
  BigRational sum;
  BigRational abs_sum;
  double tail_bound = 0.0;  // unscaled
  std::int64_t terms = 0;
};

ExactHarmonicSeries harmonic_exp_series(double x, int parity, double scale,
                                        const SeriesPolicy& policy) {
  const BigRational xr(x);
  const double ax = std::fabs(x);
  BigRational power_over_factorial(1);
  BigRational h(0);
  ExactHarmonicSeries out;

  for (std::int64_t n = 0;; ++n) {
    if (n > 0) {
      power_over_factorial *= xr;
      power_over_factorial /= n;
      h += BigRational(1, n);
    }
    const BigRational term = h * power_over_factorial;
    const BigRational magnitude = abs(term);
    if ((n + parity) % 2 == 0) {
      out.sum += term;
    } else {
      out.sum -= term;
    }
    out.abs_sum += magnitude;
    out.terms = n + 1;

    if (n >= 1) {
      const double hn = to_double(h);
      const double rho = (1.0 + 1.0 / ((n + 1) * hn)) * ax / (n + 1);
      const double scaled_term = scale * to_double(magnitude);
      const double target =
          std::max(policy.abs_tol, policy.rel_tol * std::fabs(scale * to_double(out.sum)));
      if (scaled_term <= target / 2 && rho <= 0.5) {
        const BigRational next =
            abs((h + BigRational(1, n + 1)) * power_over_factorial * xr / (n + 1));
        out.tail_bound = to_double(next) / (1.0 - rho) * (1.0 + 8 * u);
        return out;
      }
    }
    if (out.terms >= policy.max_terms) {
      throw NonConvergence("harmonic exponential series: " + std::to_string(out.terms) +
                           " terms without meeting tolerance");
    }
  }
}

}  // namespace

HarmonicFraction harmonic_unreduced(std::int64_t n) {
  if (n < 0) {
    throw DomainError("harmonic: n must be non-negative");
  }
  HarmonicFraction f{BigInteger(0), BigInteger(1)};
  if (n > 0) {
    split_harmonic(1, n + 1, f.numerator, f.denominator);
  }
  return f;
}

BigRational harmonic(std::int64_t n) {
  auto f = harmonic_unreduced(n);
  return BigRational(f.numerator, f.denominator);
}

EvalResult puiseux_tail(double x, const SeriesPolicy& policy) {
  policy.validate();
  if (!std::isfinite(x)) {
    throw DomainError("puiseux_tail: argument must be finite");
  }
  const double ax = std::fabs(x);
  CompensatedSum sum;
  double weighted = 0.0;  // sum n |t_n|: the recurrence loses ~3u per step
  double term = x;

  for (std::int64_t n = 1;; ++n) {
    sum += term;
    weighted += static_cast<double>(n) * std::fabs(term);
    const double np1 = static_cast<double>(n + 1);
    const double next = term * (x * static_cast<double>(n)) / (np1 * np1);
    if (!std::isfinite(next) || !std::isfinite(sum.value())) {
      throw NonConvergence("puiseux_tail: terms overflow binary64");
    }

    const double target = std::max(policy.abs_tol, policy.rel_tol * std::fabs(sum.value()));
    if (std::fabs(term) <= target / 2 && ax / np1 <= 0.5) {
      const double tail = 2.0 * std::fabs(next) * (1.0 + 4.0 * np1 * u);
      const double roundoff = 2.0 * u * std::fabs(sum.value()) + 3.0 * u * weighted +
                              4.0 * u * u * static_cast<double>(n) * sum.abs_sum();
      return EvalResult{sum.value(), tail + roundoff, Method::PuiseuxSeries, n};
    }
    if (n >= policy.max_terms) {
      throw NonConvergence("puiseux_tail: " + std::to_string(n) +
                           " terms without meeting tolerance");
    }
    term = next;
  }
}

EvalResult ei_series(double x, const SeriesPolicy& policy) {
  require_nonzero_finite(x, "ei_series");
  const EvalResult tail = puiseux_tail(x, policy);
  const double log_abs = std::log(std::fabs(x));

  CompensatedSum s;
  s += kEulerGamma;
  s += log_abs;
  s += tail.value;
  // gamma rounding, libm log (<= 1 ulp), one rounding per addition
  const double roundoff = u * kEulerGamma + 2.0 * u * std::fabs(log_abs) +
                          2.0 * u * s.abs_sum() + u * std::fabs(s.value());
  return EvalResult{s.value(), tail.error_bound + roundoff, Method::PuiseuxSeries, tail.work};
}

EvalResult ei_one(const SeriesPolicy& policy) {
  const EvalResult tail = puiseux_tail(1.0, policy);
  CompensatedSum s;
  s += kEulerGamma;
  s += tail.value;
  const double roundoff = u * kEulerGamma + 2.0 * u * s.abs_sum();
  return EvalResult{s.value(), tail.error_bound + roundoff, Method::PuiseuxSeries, tail.work};
}

double iterated_antiderivative_log(std::int64_t n, double x) {
  if (n < 0) {
    throw DomainError("iterated_antiderivative_log: n must be non-negative");
  }
  require_nonzero_finite(x, "iterated_antiderivative_log");
  double power_over_factorial = 1.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    power_over_factorial *= x / static_cast<double>(k);
  }
  return power_over_factorial * (std::log(std::fabs(x)) - to_double(harmonic(n)));
}

EvalResult lemma1_series(double x, const SeriesPolicy& policy) {
  policy.validate();
  require_nonzero_finite(x, "lemma1_series");

  const double ex = std::exp(x);
  const double e = std::exp(1.0);
  const auto at_x = harmonic_exp_series(x, 1, ex, policy);
  const auto at_one = harmonic_exp_series(1.0, 0, e, policy);

  const double a = to_double(at_x.sum);
  const double b = to_double(at_one.sum);
  const double abs_a = to_double(at_x.abs_sum);
  const double abs_b = to_double(at_one.abs_sum);

  const double log_abs = std::log(std::fabs(x));
  const double part_x = ex * a;
  const double part_one = e * b;
  CompensatedSum s;
  s += log_abs;
  s += part_x;
  s += part_one;

  const auto amp = [](double abs_sum, double sum) {
    return sum == 0.0 ? std::numeric_limits<double>::infinity() : abs_sum / std::fabs(sum);
  };
  const double amplification = std::max(amp(abs_a, a), amp(abs_b, b));

  const double truncation = ex * at_x.tail_bound + e * at_one.tail_bound;
  const double conditioning = u * (ex * abs_a + e * abs_b);
  const double roundoff = 2.0 * u * (std::fabs(part_x) + std::fabs(part_one)) +
                          u * std::fabs(log_abs) + 2.0 * u * s.abs_sum();

  EvalResult r;
  r.value = s.value();
  r.error_bound = truncation + conditioning + roundoff;
  r.method = Method::Lemma1Series;
  r.work = at_x.terms + at_one.terms;
  r.amplification = amplification;
  r.cancellation_warning = amplification > kCancellationWarningThreshold;
  return r;
}

EvalResult alternating_harmonic_exp_sum(const SeriesPolicy& policy) {
  policy.validate();
  const double e = std::exp(1.0);
  const auto series = harmonic_exp_series(1.0, 0, e, policy);
  const double sum = to_double(series.sum);
  const double value = e * sum;
  const double error = e * series.tail_bound + u * e * to_double(series.abs_sum) +
                       3.0 * u * std::fabs(value);
  return EvalResult{value, error, Method::Lemma1Series, series.terms};
}

BigRational binomial_harmonic_lhs(std::int64_t n) {
  if (n < 1) {
    throw DomainError("binomial_harmonic_lhs: n must be positive");
  }
  // Pascal's triangle up to row n.
  std::vector<BigInteger> row{BigInteger(1)};
  for (std::int64_t m = 1; m <= n; ++m) {
    std::vector<BigInteger> next(row.size() + 1);
    next.front() = 1;
    next.back() = 1;
    for (std::size_t k = 1; k < row.size(); ++k) {
      next[k] = row[k - 1] + row[k];
    }
    row = std::move(next);
  }

  BigRational h(0);
  BigRational total(0);
  for (std::int64_t k = 0; k <= n; ++k) {
    if (k > 0) h += BigRational(1, k);
    const BigRational term = BigRational(row[static_cast<std::size_t>(k)]) * h;
    if (k % 2 == 1) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

BigRational convolution_coefficient_check(std::int64_t n) {
  if (n < 1) {
    throw DomainError("convolution_coefficient_check: n must be positive");
  }
  std::vector<BigInteger> factorial(static_cast<std::size_t>(n) + 1);
  factorial[0] = 1;
  for (std::int64_t k = 1; k <= n; ++k) {
    factorial[static_cast<std::size_t>(k)] = factorial[static_cast<std::size_t>(k - 1)] * k;
  }

  BigRational h(0);
  BigRational total(0);
  for (std::int64_t k = 0; k <= n; ++k) {
    if (k > 0) h += BigRational(1, k);
    const BigRational term =
        h / BigRational(factorial[static_cast<std::size_t>(n - k)] *
                        factorial[static_cast<std::size_t>(k)]);
    if (k % 2 == 1) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

}  // namespace eikit
