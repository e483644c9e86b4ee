#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>

#include "bellcord/errors.hpp"

namespace bellcord {

// Signed magnitude in the log domain: value = sign * exp(log_abs).
// sign == 0 encodes an exact zero, in which case log_abs is -inf by
// convention and ignored by all operations.  This is the carrier for every
// quantity that can leave double range (Bell values, moments, tail bounds).
struct LogValue {
  int sign = 0;  // -1, 0, +1
  double log_abs = -std::numeric_limits<double>::infinity();

  static LogValue zero() { return LogValue{}; }

  static LogValue from_log(int sign, double log_abs) {
    require(sign == -1 || sign == 0 || sign == 1, ErrorCode::invalid,
            "LogValue sign must be -1, 0 or +1");
    if (sign == 0)
      return zero();
    require(!std::isnan(log_abs), ErrorCode::invalid,
            "LogValue log_abs must not be NaN");
    return LogValue{sign, log_abs};
  }

  static LogValue from_double(double v) {
    require(!std::isnan(v), ErrorCode::domain, "cannot lift NaN to LogValue");
    if (v == 0.0) return zero();
    return LogValue{v > 0 ? 1 : -1, std::log(std::fabs(v))};
  }

  bool is_zero() const { return sign == 0; }

  // Saturates to +/-inf or 0.0 outside double range; never NaN.
  double to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
  }
};

inline LogValue operator-(const LogValue& a) {
  if (a.sign == 0) return a;
  return LogValue{-a.sign, a.log_abs};
}

inline LogValue operator*(const LogValue& a, const LogValue& b) {
  if (a.sign == 0 || b.sign == 0) return LogValue::zero();
  return LogValue{a.sign * b.sign, a.log_abs + b.log_abs};
}

inline LogValue operator/(const LogValue& a, const LogValue& b) {
  require(b.sign != 0, ErrorCode::domain, "LogValue division by zero");
  if (a.sign == 0) return LogValue::zero();
  return LogValue{a.sign * b.sign, a.log_abs - b.log_abs};
}

inline LogValue operator+(const LogValue& a, const LogValue& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  // Anchor at the larger magnitude so the correction term is in [0, 1].
  const LogValue& hi = (a.log_abs >= b.log_abs) ? a : b;
  const LogValue& lo = (a.log_abs >= b.log_abs) ? b : a;
  const double d = lo.log_abs - hi.log_abs;  // <= 0
  if (hi.sign == lo.sign)
    return LogValue{hi.sign, hi.log_abs + std::log1p(std::exp(d))};
  const double r = std::exp(d);  // |lo|/|hi| in [0, 1]
  if (r == 1.0) return LogValue::zero();
  return LogValue{hi.sign, hi.log_abs + std::log1p(-r)};
}

inline LogValue operator-(const LogValue& a, const LogValue& b) {
  return a + (-b);
}

// value^e for integer e >= 0; 0^0 = 1.
inline LogValue pow_int(const LogValue& a, long e) {
  require(e >= 0, ErrorCode::domain, "pow_int exponent must be >= 0");
  if (e == 0) return LogValue{1, 0.0};
  if (a.sign == 0) return LogValue::zero();
  const int s = (a.sign < 0 && (e & 1)) ? -1 : 1;
  return LogValue{s, static_cast<double>(e) * a.log_abs};
}

// Total order consistent with the represented real values.
inline int compare(const LogValue& a, const LogValue& b) {
  if (a.sign != b.sign) return a.sign < b.sign ? -1 : 1;
  if (a.sign == 0) return 0;
  if (a.log_abs == b.log_abs) return 0;
  const bool abs_less = a.log_abs < b.log_abs;
  if (a.sign > 0) return abs_less ? -1 : 1;
  return abs_less ? 1 : -1;
}

inline bool operator<(const LogValue& a, const LogValue& b) {
  return compare(a, b) < 0;
}
inline bool operator<=(const LogValue& a, const LogValue& b) {
  return compare(a, b) <= 0;
}

// log(a+b) for nonnegative log-domain magnitudes (plain logaddexp on
// doubles, -inf encodes zero).  Kept here so table and series code share
// one definition.
inline double logaddexp(double la, double lb) {
  if (std::isinf(la) && la < 0) return lb;
  if (std::isinf(lb) && lb < 0) return la;
  const double hi = la >= lb ? la : lb;
  const double lo = la >= lb ? lb : la;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace bellcord
