#include "eikit/types.hpp"

#include <cmath>

#include "eikit/errors.hpp"

namespace eikit {

void SeriesPolicy::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw DomainError("series policy: abs_tol must be positive and finite");
  }
  if (!(rel_tol >= 0.0) || !std::isfinite(rel_tol)) {
    throw DomainError("series policy: rel_tol must be non-negative and finite");
  }
  if (max_terms < 1) {
    throw DomainError("series policy: max_terms must be at least 1");
  }
}

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw DomainError("quadrature config: abs_tol must be positive and finite");
  }
  if (max_subdivisions < 1) {
    throw DomainError("quadrature config: max_subdivisions must be at least 1");
  }
  if (!(tail_cut_tol > 0.0) || !std::isfinite(tail_cut_tol)) {
    throw DomainError("quadrature config: tail_cut_tol must be positive and finite");
  }
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::PuiseuxSeries:
      return "puiseux_series";
    case Method::Lemma1Series:
      return "lemma1_series";
    case Method::CpvQuadrature:
      return "cpv_quadrature";
  }
  return "unknown";
}

}  // namespace eikit
