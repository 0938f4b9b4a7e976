#pragma once

#include <cassert>
#include <cmath>
#include <limits>

namespace setconv {

/// Extended real value in [-inf, +inf]. NaN is excluded by construction, so
/// comparisons are total. Addition follows the minimization convention:
///   r + (+inf) = +inf for every r > -inf,
///   r + (-inf) = -inf for every r < +inf,
///   (+inf) + (-inf) = +inf.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : v_(v) { assert(!std::isnan(v)); }

  static constexpr ExtReal infinity() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static constexpr ExtReal neg_infinity() {
    return ExtReal(-std::numeric_limits<double>::infinity());
  }

  constexpr double value() const { return v_; }
  constexpr bool is_finite() const { return v_ == v_ && v_ != inf() && v_ != -inf(); }
  constexpr bool is_pos_inf() const { return v_ == inf(); }
  constexpr bool is_neg_inf() const { return v_ == -inf(); }

  friend constexpr bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend constexpr bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend constexpr bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
  friend constexpr bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
  friend constexpr bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }
  friend constexpr bool operator!=(ExtReal a, ExtReal b) { return a.v_ != b.v_; }

  friend constexpr ExtReal operator-(ExtReal a) { return ExtReal(-a.v_); }

  friend constexpr ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.is_pos_inf() || b.is_pos_inf()) return infinity();
    if (a.is_neg_inf() || b.is_neg_inf()) return neg_infinity();
    return ExtReal(a.v_ + b.v_);
  }

 private:
  static constexpr double inf() { return std::numeric_limits<double>::infinity(); }
  double v_ = 0.0;
};

constexpr ExtReal ext_min(ExtReal a, ExtReal b) { return a <= b ? a : b; }
constexpr ExtReal ext_max(ExtReal a, ExtReal b) { return a >= b ? a : b; }

}  // namespace setconv
