#pragma once

#include <cmath>

namespace trigsum {

/// Neumaier's variant of Kahan summation. Order-dependent but deterministic.
class CompensatedSum {
 public:
  CompensatedSum& add(double value) noexcept {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator+=(double value) noexcept { return add(value); }

  double value() const noexcept { return sum_ + compensation_; }
  double head() const noexcept { return sum_; }
  double tail() const noexcept { return compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace trigsum
