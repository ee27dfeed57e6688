#pragma once

#include <cstddef>
#include <functional>

namespace configdensity {

/// Worker count: hardware concurrency, capped by CONFIGDENSITY_THREADS.
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Work items are independent; callers write
/// results into per-index slots so reductions stay deterministic. Calls made
/// from inside a running parallel_for execute sequentially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace configdensity
