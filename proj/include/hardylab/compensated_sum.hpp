#pragma once

#ifdef __FAST_MATH__
#error "-ffast-math breaks compensated summation"
#endif

#include <cmath>

namespace hardylab {

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays exact
/// when the incoming term is larger in magnitude than the running sum.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  CompensatedSum& operator+=(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator-=(double value) { return *this += -value; }

  [[nodiscard]] double value() const { return sum_ + compensation_; }
  explicit operator double() const { return value(); }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace hardylab
