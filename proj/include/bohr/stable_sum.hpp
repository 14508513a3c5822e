#pragma once

namespace bohr {

/// Neumaier compensated accumulator. Summation order still matters for
/// bit-reproducibility, so callers feed terms in a fixed (lexicographic) order.
template <typename T = double>
class StableSum {
 public:
  StableSum() = default;
  explicit StableSum(T init) : sum_(init) {}

  void add(T x) {
    T t = sum_ + x;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }

  T value() const { return sum_ + carry_; }

 private:
  T sum_ = 0;
  T carry_ = 0;
};

}  // namespace bohr
