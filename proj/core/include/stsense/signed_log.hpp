#pragma once

#include <cmath>
#include <limits>

namespace stsense {

/// A real value stored as (sign, log of absolute value). Exact sign tracking
/// for quantities whose magnitude overflows double, e.g. products of gamma
/// ratios or Pochhammer factors with alternating sign.
struct SignedLogValue {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;  // -1, 0, +1; sign == 0 means exactly zero, log_abs ignored

  static SignedLogValue zero() { return {}; }

  static SignedLogValue one() { return {0.0, +1}; }

  static SignedLogValue from_value(double v) {
    if (v == 0.0) return zero();
    return {std::log(std::abs(v)), v > 0.0 ? +1 : -1};
  }

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  SignedLogValue operator*(const SignedLogValue& o) const {
    if (sign == 0 || o.sign == 0) return zero();
    return {log_abs + o.log_abs, sign * o.sign};
  }

  SignedLogValue reciprocal() const {
    return {-log_abs, sign};  // caller must not invert zero
  }
};

}  // namespace stsense
