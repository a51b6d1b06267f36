#pragma once

#include <algorithm>
#include <cmath>

#include "twospin/rational.hpp"

namespace twospin {

/// Exact non-negative rational weight. The additive/multiplicative
/// monoid used by the exact partition-function backends.
struct ExactWeight {
  Rational value;

  static ExactWeight zero() { return {Rational(0)}; }
  static ExactWeight one() { return {Rational(1)}; }
  static ExactWeight from_rational(const Rational& q) { return {q}; }

  bool is_zero() const { return value == 0; }

  ExactWeight operator+(const ExactWeight& o) const { return {value + o.value}; }
  ExactWeight operator*(const ExactWeight& o) const { return {value * o.value}; }
  ExactWeight& operator+=(const ExactWeight& o) { value += o.value; return *this; }
  ExactWeight& operator*=(const ExactWeight& o) { value *= o.value; return *this; }
  ExactWeight pow(long e) const { return {pow_rational(value, e)}; }
};

/// Log-domain weight with an explicit zero flag, so that gamma = 0
/// (hard-core) survives the transform. Addition is log-sum-exp.
struct LogWeight {
  bool zero_flag = true;
  double lg = 0.0;

  static LogWeight zero() { return {true, 0.0}; }
  static LogWeight one() { return {false, 0.0}; }
  static LogWeight from_rational(const Rational& q) {
    if (q == 0) return zero();
    return {false, log_double(q)};
  }
  static LogWeight from_log(double lg) { return {false, lg}; }

  bool is_zero() const { return zero_flag; }

  LogWeight operator*(const LogWeight& o) const {
    if (zero_flag || o.zero_flag) return zero();
    return {false, lg + o.lg};
  }
  LogWeight operator+(const LogWeight& o) const {
    if (zero_flag) return o;
    if (o.zero_flag) return *this;
    double a = std::max(lg, o.lg), b = std::min(lg, o.lg);
    return {false, a + std::log1p(std::exp(b - a))};
  }
  LogWeight& operator+=(const LogWeight& o) { *this = *this + o; return *this; }
  LogWeight& operator*=(const LogWeight& o) { *this = *this * o; return *this; }
  LogWeight pow(long e) const {
    if (zero_flag) return e == 0 ? one() : zero();
    return {false, lg * static_cast<double>(e)};
  }
};

/// Backend-tagged result value: exactly one of the two representations,
/// matching the JSON schema {"exact": "p/q"} | {"log": float, "zero": bool}.
struct Weight {
  bool exact = true;
  Rational q;
  LogWeight lw;

  static Weight from_exact(const Rational& v) { return {true, v, {}}; }
  static Weight from_log(const LogWeight& w) { return {false, Rational(0), w}; }

  double log_value() const {
    if (exact) {
      if (q == 0) throw validation_error("log of zero weight");
      return log_double(q);
    }
    if (lw.zero_flag) throw validation_error("log of zero weight");
    return lw.lg;
  }
  bool is_zero() const { return exact ? q == 0 : lw.zero_flag; }
};

}  // namespace twospin
