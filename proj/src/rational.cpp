#include "eikit/rational.hpp"

#include <mpfr.h>

namespace eikit {

double to_double(const BigRational& q) {
  mpfr_t r;
  mpfr_init2(r, 53);
  mpfr_set_q(r, q.backend().data(), MPFR_RNDN);
  const double d = mpfr_get_d(r, MPFR_RNDN);
  mpfr_clear(r);
  return d;
}

}  // namespace eikit
