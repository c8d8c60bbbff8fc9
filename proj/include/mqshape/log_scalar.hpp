#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>

namespace mqshape {

/// A strictly positive real stored as its natural logarithm. Quantities
/// such as e^{2 n gamma_n} leave the double range already for n = 4.
class LogScalar {
 public:
  constexpr LogScalar() = default;

  static constexpr LogScalar from_log(double log_value) { return LogScalar(log_value); }
  static LogScalar from_value(double value) { return LogScalar(std::log(value)); }

  constexpr double log() const { return log_value_; }
  /// exp(log); may be +inf or 0 when outside the double range.
  double value() const { return std::exp(log_value_); }
  bool representable() const {
    return log_value_ < std::log(std::numeric_limits<double>::max()) &&
           log_value_ > std::log(std::numeric_limits<double>::min());
  }

  constexpr LogScalar operator*(LogScalar o) const { return LogScalar(log_value_ + o.log_value_); }
  constexpr LogScalar operator/(LogScalar o) const { return LogScalar(log_value_ - o.log_value_); }
  constexpr LogScalar pow(double p) const { return LogScalar(p * log_value_); }

  constexpr auto operator<=>(const LogScalar&) const = default;

 private:
  constexpr explicit LogScalar(double l) : log_value_(l) {}
  double log_value_ = 0.0;
};

/// log(e^a + e^b) without overflow.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace mqshape
