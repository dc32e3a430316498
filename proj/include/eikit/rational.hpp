#pragma once

#include <boost/multiprecision/gmp.hpp>

namespace eikit {

// GMP-backed; always canonical (lowest terms, positive denominator).
using BigRational = boost::multiprecision::mpq_rational;
using BigInteger = boost::multiprecision::mpz_int;

/// Nearest binary64 value (GMP truncates; we round to nearest).
double to_double(const BigRational& q);

}  // namespace eikit
