#pragma once

#include <stdexcept>
#include <string>

namespace eikit {

// Argument outside the function's domain, e.g. Ei(0) or li(1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A series or quadrature ran out of its term/subdivision budget before
// meeting the requested tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller-supplied data disagrees with itself (e.g. a pole limit that does
// not match the numerator it describes).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace eikit
