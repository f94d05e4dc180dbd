#pragma once

#include <cmath>

namespace envsel::detail {

// Neumaier-compensated accumulator. Keeps curve sums accurate to a few ulp
// even for K on the order of 1e6 terms.
class compensated_sum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace envsel::detail
