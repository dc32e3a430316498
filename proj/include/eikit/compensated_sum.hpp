#pragma once

#include <cmath>

namespace eikit {

// Neumaier's variant of Kahan summation. Also tracks sum |x_i|, which the
// evaluators need for their roundoff terms.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
    abs_sum_ += std::fabs(x);
    ++count_;
  }

  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const { return sum_ + carry_; }
  double abs_sum() const { return abs_sum_; }
  long count() const { return count_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
  double abs_sum_ = 0.0;
  long count_ = 0;
};

}  // namespace eikit
