#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace twospin {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised when an input violates an operation's preconditions.
/// The CLI maps this to exit code 2.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when an input exceeds a configured size/width limit.
/// The CLI maps this to exit code 3.
class resource_limit_error : public std::runtime_error {
 public:
  explicit resource_limit_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parses a rational from a "p" or "p/q" string; decimal notation is
/// rejected.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw validation_error("malformed rational: empty string");
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  if (i == s.size()) throw validation_error("malformed rational: '" + s + "'");
  bool seen_slash = false;
  bool digit_since_slash = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digit_since_slash = true;
    } else if (c == '/' && !seen_slash && digit_since_slash) {
      seen_slash = true;
      digit_since_slash = false;
    } else {
      throw validation_error("malformed rational: '" + s + "' (decimals are not accepted; use p/q)");
    }
  }
  if (!digit_since_slash) throw validation_error("malformed rational: '" + s + "'");
  Rational q;
  if (q.set_str(s, 10) != 0) throw validation_error("malformed rational: '" + s + "'");
  if (q.get_den() == 0) throw validation_error("malformed rational: zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

/// Renders a rational as "p/q" with the denominator always present,
/// matching the wire format used throughout the JSON interfaces.
inline std::string rational_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// q^e for integer e (e may be negative; q must be nonzero then).
inline Rational pow_rational(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  bool invert = e < 0;
  unsigned long ue = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  if (invert && q == 0) throw validation_error("0 cannot be raised to a negative power");
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), ue);
  mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), ue);
  Rational r = invert ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

/// Exact Δ-th root of a rational, when one exists.
inline bool exact_root(const Rational& q, unsigned long delta, Rational* out) {
  if (q < 0) return false;
  Integer num, den;
  int ok_num = mpz_root(num.get_mpz_t(), q.get_num().get_mpz_t(), delta);
  int ok_den = mpz_root(den.get_mpz_t(), q.get_den().get_mpz_t(), delta);
  if (!ok_num || !ok_den) return false;
  *out = Rational(num, den);
  out->canonicalize();
  return true;
}

/// Nearest-double rendering, for display fields next to exact values.
inline double to_double(const Rational& q) { return q.get_d(); }

/// log of a positive rational as a double (display / log-domain seeding).
inline double log_double(const Rational& q) {
  if (q <= 0) throw validation_error("log of non-positive rational");
  // Split mantissa/exponent so huge numerators do not overflow the double.
  long exp_num = 0, exp_den = 0;
  double m_num = mpz_get_d_2exp(&exp_num, q.get_num().get_mpz_t());
  double m_den = mpz_get_d_2exp(&exp_den, q.get_den().get_mpz_t());
  return std::log(m_num) - std::log(m_den) + std::log(2.0) * static_cast<double>(exp_num - exp_den);
}

}  // namespace twospin
