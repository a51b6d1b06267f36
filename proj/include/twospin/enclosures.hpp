#pragma once

#include "twospin/rational.hpp"

namespace twospin {

/// A certified enclosure lo ≤ value ≤ hi with exact rational endpoints.
/// Used wherever a chosen integer (k, k1, k2) must provably satisfy an
/// inequality involving logs: outward rounding keeps the certificate
/// independent of floating-point behaviour.
struct Enclosure {
  Rational lo;
  Rational hi;

  Enclosure operator+(const Enclosure& o) const { return {lo + o.lo, hi + o.hi}; }
  Enclosure operator-(const Enclosure& o) const { return {lo - o.hi, hi - o.lo}; }
  Enclosure scale(const Rational& c) const {  // c may be negative
    return c >= 0 ? Enclosure{lo * c, hi * c} : Enclosure{hi * c, lo * c};
  }
};

namespace detail {

// 2*atanh(t) = 2*sum_{j>=0} t^(2j+1)/(2j+1) for |t|<1, with a geometric
// tail bound. Requires 0 <= t < 1.
inline Enclosure two_atanh_bounds(const Rational& t, int terms) {
  Rational sum = 0;
  Rational power = t;  // t^(2j+1)
  Rational t2 = t * t;
  for (int j = 0; j < terms; ++j) {
    sum += power / (2 * j + 1);
    power *= t2;
  }
  // tail = sum_{j>=terms} t^(2j+1)/(2j+1) <= t^(2*terms+1) / ((2*terms+1)(1-t^2))
  Rational tail = power / ((2 * terms + 1) * (1 - t2));
  return {2 * sum, 2 * (sum + tail)};
}

inline const Enclosure& ln2_bounds() {
  static const Enclosure e = two_atanh_bounds(Rational(1, 3), 24);
  return e;
}

}  // namespace detail

/// Certified enclosure of ln(x) for rational x > 0.
inline Enclosure log_bounds(const Rational& x, int terms = 24) {
  if (x <= 0) throw validation_error("log_bounds requires a positive argument");
  Rational y = x;
  long e2 = 0;
  while (y >= 2) { y /= 2; ++e2; }
  while (y < 1) { y *= 2; --e2; }
  // y in [1,2): t = (y-1)/(y+1) in [0, 1/3)
  Rational t = (y - 1) / (y + 1);
  Enclosure core = detail::two_atanh_bounds(t, terms);
  Enclosure shift = detail::ln2_bounds().scale(Rational(e2));
  return core + shift;
}

/// Certified enclosure of exp(x) for rational x.
inline Enclosure exp_bounds(const Rational& x, int terms = 24) {
  if (x < 0) {
    Enclosure pos = exp_bounds(-x, terms);
    return {1 / pos.hi, 1 / pos.lo};
  }
  // Argument reduction: e^x = (e^{x/2^s})^{2^s} with reduced argument <= 1/2.
  int s = 0;
  Rational y = x;
  while (y > Rational(1, 2)) { y /= 2; ++s; }
  Rational sum = 1, term = 1;
  for (int j = 1; j <= terms; ++j) {
    term *= y / j;
    sum += term;
  }
  // tail <= term * y/(terms+1) / (1 - y/(terms+2)), crude but valid for y <= 1/2
  Rational tail = term * y / (terms + 1) / (1 - y / (terms + 2));
  Enclosure r{sum, sum + tail};
  for (int i = 0; i < s; ++i) r = {r.lo * r.lo, r.hi * r.hi};
  return r;
}

/// Certified enclosure of e itself.
inline const Enclosure& e_bounds() {
  static const Enclosure e = exp_bounds(Rational(1));
  return e;
}

}  // namespace twospin
