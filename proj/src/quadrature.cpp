#include "eikit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "eikit/compensated_sum.hpp"
#include "eikit/errors.hpp"

namespace eikit {
namespace {

constexpr double u = kUnitRoundoff;

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double abs_value;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  double abs_sum = kWgk[7] * std::fabs(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    const double w = kWgk[static_cast<std::size_t>(j)];
    kronrod += w * (f1 + f2);
    abs_sum += w * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) {
      gauss += kWg[static_cast<std::size_t>(j / 2)] * (f1 + f2);
    }
  }
  const double value = kronrod * half;
  if (!std::isfinite(value)) {
    throw DomainError("integrate_adaptive: integrand is not finite on [" + std::to_string(a) +
                      ", " + std::to_string(b) + "]");
  }
  return Segment{a, b, value, std::fabs((kronrod - gauss) * half), abs_sum * std::fabs(half)};
}

// int_{-inf}^{x} e^t/t dt for x < 0.
EvalResult ei_negative(double x, const QuadConfig& cfg) {
  double cut = std::min(x, -1.0);
  while (std::exp(cut) / std::fabs(cut) > cfg.tail_cut_tol) {
    cut -= 1.0;
  }
  const double tail_bound = std::exp(cut) / std::fabs(cut);
  if (cut == x) {
    return EvalResult{0.0, tail_bound, Method::CpvQuadrature, 0};
  }
  const auto q = integrate_adaptive([](double t) { return std::exp(t) / t; }, cut, x, cfg);
  if (!q.converged) {
    throw NonConvergence("ei_quadrature: adaptive integration over [" + std::to_string(cut) +
                         ", " + std::to_string(x) + "] did not converge");
  }
  return EvalResult{q.value, q.error_estimate + tail_bound, Method::CpvQuadrature,
                    q.evaluations};
}

}  // namespace

QuadResult integrate_adaptive(const Integrand& f, double a, double b, const QuadConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("integrate_adaptive: need finite a < b");
  }

  std::priority_queue<Segment> work;
  work.push(gauss_kronrod15(f, a, b));
  double total_error = work.top().error;
  double total_abs = work.top().abs_value;
  std::int64_t evaluations = 15;
  std::int64_t subdivisions = 0;
  std::vector<Segment> unsplittable;

  const auto settled = [&] { return total_error + 2.0 * u * total_abs <= cfg.abs_tol; };

  while (!settled() && !work.empty() && subdivisions < cfg.max_subdivisions) {
    const Segment worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // Interval is at binary64 resolution; keep it as is.
      unsplittable.push_back(worst);
      continue;
    }
    const Segment left = gauss_kronrod15(f, worst.a, mid);
    const Segment right = gauss_kronrod15(f, mid, worst.b);
    evaluations += 30;
    ++subdivisions;
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    work.push(left);
    work.push(right);
  }

  // Re-sum from the pieces so the running updates do not accumulate drift.
  CompensatedSum value;
  CompensatedSum error;
  CompensatedSum abs_value;
  const auto collect = [&](const Segment& s) {
    value += s.value;
    error += s.error;
    abs_value += s.abs_value;
  };
  for (const auto& s : unsplittable) collect(s);
  while (!work.empty()) {
    collect(work.top());
    work.pop();
  }

  QuadResult r;
  r.value = value.value();
  r.error_estimate = error.value() + 2.0 * u * abs_value.value();
  r.evaluations = evaluations;
  r.converged = r.error_estimate <= cfg.abs_tol;
  return r;
}

QuadResult cpv_integrate(const RegularizedPoleIntegrand& g, double a, double b,
                         const QuadConfig& cfg) {
  cfg.validate();
  const double c = g.pole_location;
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < c && c < b)) {
    throw DomainError("cpv_integrate: pole must lie strictly inside (a, b)");
  }
  if (!std::isfinite(g.limit_at_pole)) {
    throw ConsistencyError("cpv_integrate: limit_at_pole must be finite");
  }
  {
    constexpr double h = 1e-4;
    const double symmetric = (g.numerator(c + h) - g.numerator(c - h)) / h;
    if (std::fabs(symmetric - g.limit_at_pole) > 1e-6 * std::max(1.0, std::fabs(g.limit_at_pole))) {
      throw ConsistencyError("cpv_integrate: limit_at_pole " + std::to_string(g.limit_at_pole) +
                             " disagrees with symmetric difference " + std::to_string(symmetric));
    }
  }

  QuadConfig half = cfg;
  half.abs_tol = cfg.abs_tol / 2;

  const double r = std::min(c - a, b - c);
  const double guard = kRemovableGuard * std::max(1.0, r);
  const auto odd_part = [&g, c, guard](double s) {
    if (s <= guard) return g.limit_at_pole;
    return (g.numerator(c + s) - g.numerator(c - s)) / s;
  };
  QuadResult window = integrate_adaptive(odd_part, 0.0, r, half);

  QuadResult leftover{0.0, 0.0, 0, true};
  const auto one_sided = [&g, c](double t) { return g.numerator(t) / (t - c); };
  // c - r and c + r can round onto a or b; then there is nothing left over
  if (a < c - r) {
    leftover = integrate_adaptive(one_sided, a, c - r, half);
  } else if (c + r < b) {
    leftover = integrate_adaptive(one_sided, c + r, b, half);
  }

  if (!window.converged || !leftover.converged) {
    throw NonConvergence("cpv_integrate: subdivision budget exhausted");
  }
  return QuadResult{window.value + leftover.value,
                    window.error_estimate + leftover.error_estimate,
                    window.evaluations + leftover.evaluations, true};
}

EvalResult ei_quadrature(double x, const QuadConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(x)) {
    throw DomainError("ei_quadrature: argument must be finite");
  }
  if (x == 0.0) {
    throw DomainError("ei_quadrature: Ei is defined on R^x = R \\ {0}; x = 0 is the pole");
  }
  if (x < 0.0) {
    return ei_negative(x, cfg);
  }

  QuadConfig half = cfg;
  half.abs_tol = cfg.abs_tol / 2;
  const double b = std::max(x, 1.0);
  const EvalResult tail = ei_negative(-b, half);
  const RegularizedPoleIntegrand exp_over_t{[](double t) { return std::exp(t); }, 0.0, 2.0};
  const QuadResult pv = cpv_integrate(exp_over_t, -b, x, half);

  return EvalResult{tail.value + pv.value,
                    tail.error_bound + pv.error_estimate +
                        u * (std::fabs(tail.value) + std::fabs(pv.value)),
                    Method::CpvQuadrature, tail.work + pv.evaluations};
}

double gamma_integrand(double t) {
  if (t <= kRemovableGuard) return 1.0;
  return (-std::expm1(-t) - std::exp(-1.0 / t)) / t;
}

QuadResult gamma_integral(const QuadConfig& cfg) {
  return integrate_adaptive(gamma_integrand, 0.0, 1.0, cfg);
}

double lemma2_integrand(double t) {
  const double s = 1.0 - t;
  if (s <= kRemovableGuard) return -1.0;
  return -std::expm1(s) / s;
}

QuadResult lemma2_integral(const QuadConfig& cfg) {
  return integrate_adaptive(lemma2_integrand, 0.0, 1.0, cfg);
}

}  // namespace eikit
