#include <catch2/catch_amalgamated.hpp>

#include "twospin/enclosures.hpp"
#include "twospin/rational.hpp"
#include "twospin/weight.hpp"

using namespace twospin;

TEST_CASE("rational parsing accepts p and p/q, rejects decimals") {
  CHECK(parse_rational("312") == Rational(312));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK_THROWS_AS(parse_rational("0.5"), validation_error);
  CHECK_THROWS_AS(parse_rational("1e3"), validation_error);
  CHECK_THROWS_AS(parse_rational("3/0"), validation_error);
  CHECK_THROWS_AS(parse_rational(""), validation_error);
  CHECK_THROWS_AS(parse_rational("3/-4"), validation_error);
}

TEST_CASE("rational_string always carries the denominator") {
  CHECK(rational_string(Rational(5)) == "5/1");
  CHECK(rational_string(Rational(-7, 2)) == "-7/2");
}

TEST_CASE("pow_rational handles zero and negative exponents") {
  CHECK(pow_rational(Rational(0), 0) == 1);  // 0^0 = 1 by convention
  CHECK(pow_rational(Rational(0), 5) == 0);
  CHECK(pow_rational(Rational(2, 3), -2) == Rational(9, 4));
  CHECK_THROWS_AS(pow_rational(Rational(0), -1), validation_error);
}

TEST_CASE("log enclosures bracket the true value tightly") {
  for (Rational x : {Rational(2), Rational(5), Rational(312), Rational(1, 7), Rational(41, 10)}) {
    Enclosure e = log_bounds(x);
    double truth = std::log(to_double(x));
    CHECK(to_double(e.lo) <= truth + 1e-15);
    CHECK(to_double(e.hi) >= truth - 1e-15);
    CHECK(to_double(e.hi - e.lo) < 1e-12);
  }
  CHECK_THROWS_AS(log_bounds(Rational(0)), validation_error);
}

TEST_CASE("exp enclosures bracket e and small arguments") {
  const Enclosure& e = e_bounds();
  CHECK(to_double(e.lo) <= 2.718281828459045);
  CHECK(to_double(e.hi) >= 2.718281828459045);
  CHECK(to_double(e.hi - e.lo) < 1e-12);
  // double conversion rounds, so allow one ulp of slack on the float side
  Enclosure big = exp_bounds(Rational(10));
  CHECK(to_double(big.lo) <= std::exp(10.0) * (1 + 1e-16));
  CHECK(to_double(big.hi) >= std::exp(10.0) * (1 - 1e-15));
  CHECK(to_double(big.hi - big.lo) / std::exp(10.0) < 1e-12);
  Enclosure neg = exp_bounds(Rational(-1));
  CHECK(to_double(neg.lo) <= std::exp(-1.0) * (1 + 1e-16));
  CHECK(to_double(neg.hi) >= std::exp(-1.0) * (1 - 1e-15));
}

TEST_CASE("tagged weight results carry either representation") {
  Weight e = Weight::from_exact(Rational(3, 4));
  CHECK(e.exact);
  CHECK_FALSE(e.is_zero());
  CHECK(e.log_value() == Catch::Approx(std::log(0.75)));
  CHECK(Weight::from_exact(Rational(0)).is_zero());
  CHECK_THROWS_AS(Weight::from_exact(Rational(0)).log_value(), validation_error);

  Weight l = Weight::from_log(LogWeight::from_log(2.5));
  CHECK_FALSE(l.exact);
  CHECK(l.log_value() == 2.5);
  CHECK(Weight::from_log(LogWeight::zero()).is_zero());
}

TEST_CASE("log-domain weights agree with exact weights") {
  ExactWeight a{Rational(3, 7)}, b{Rational(9, 2)};
  LogWeight la = LogWeight::from_rational(a.value), lb = LogWeight::from_rational(b.value);
  CHECK(std::abs((la * lb).lg - std::log(to_double((a * b).value))) < 1e-12);
  CHECK(std::abs((la + lb).lg - std::log(to_double((a + b).value))) < 1e-12);
  CHECK((LogWeight::from_rational(Rational(0)) * lb).is_zero());
  CHECK((LogWeight::from_rational(Rational(0)) + lb).lg == Catch::Approx(lb.lg));
  CHECK(la.pow(3).lg == Catch::Approx(3 * la.lg));
}
