#include <doctest.h>

#include <string>

#include "expdio/interval.hpp"

using namespace expdio;

namespace {
const Precision P = Precision::from_digits(60);

// The reference decimal is truncated, so allow its last digit as slack.
bool encloses(const Interval& v, const char* decimal) {
  const std::string s(decimal);
  const auto dot = s.find('.');
  const long places = dot == std::string::npos ? 0 : static_cast<long>(s.size() - dot - 1);
  mpfr_t x, slack;
  mpfr_inits2(400, x, slack, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_str(x, decimal, 10, MPFR_RNDN);
  mpfr_set_ui(slack, 10, MPFR_RNDN);
  mpfr_pow_si(slack, slack, -places, MPFR_RNDU);
  mpfr_mul_ui(slack, slack, 2, MPFR_RNDU);
  mpfr_add(slack, v.upper(), slack, MPFR_RNDU);
  bool ok = mpfr_cmp(x, slack) <= 0;
  mpfr_set_ui(slack, 10, MPFR_RNDN);
  mpfr_pow_si(slack, slack, -places, MPFR_RNDU);
  mpfr_mul_ui(slack, slack, 2, MPFR_RNDU);
  mpfr_sub(slack, v.lower(), slack, MPFR_RNDD);
  ok = ok && mpfr_cmp(slack, x) <= 0;
  mpfr_clears(x, slack, static_cast<mpfr_ptr>(nullptr));
  return ok;
}
}  // namespace

TEST_CASE("precision from digits") {
  CHECK(Precision::from_digits(60).bits >= 200);
  CHECK(Precision::from_digits(60).digits() >= 60);
  CHECK(Precision::from_digits(60).doubled().bits == 2 * Precision::from_digits(60).bits);
}

TEST_CASE("constants and elementary functions enclose reference values") {
  CHECK(encloses(Interval::pi(P), "3.14159265358979323846264338327950288419716939937510582097494"));
  CHECK(encloses(Interval::euler(P), "2.71828182845904523536028747135266249775724709369995957496697"));
  CHECK(encloses(log(Interval(P, 3741)), "8.2271082343481461420513597826302843457"));
  CHECK(encloses(sqrt(Interval(P, 2)), "1.41421356237309504880168872420969807856967187537694807317668"));
  CHECK(encloses(Interval::from_decimal(P, {36, -137}) * Interval::from_decimal(P, {1, 137}), "36"));
  CHECK(encloses(Interval::from_rational(P, Integer(1), Integer(3)), "0.333333333333333333333333333333333333"));
  CHECK(log(Interval(P, 3741)).width().upper_double() < 1e-55);
}

TEST_CASE("directed comparison") {
  const Interval a(P, 2);
  const Interval b = sqrt(Interval(P, 5));
  CHECK(certainly_less(a, b));
  CHECK(less(a, b));
  CHECK_FALSE(less(b, a));
  CHECK_FALSE(less(a, a));
  CHECK_THROWS_AS(less(b, Interval::hull(Interval(P, 1), Interval(P, 3))), PrecisionError);
  CHECK_THROWS_AS(log(Interval(P, 0)), PrecisionError);
  CHECK(floor_lower(b) == 2);
  CHECK(ceil_upper(b) == 3);
}

TEST_CASE("arithmetic keeps enclosure") {
  const Interval third = Interval::from_rational(P, Integer(1), Integer(3));
  const Interval one = third * 3;
  CHECK(encloses(one, "1"));
  CHECK(encloses(-third + 1, "0.666666666666666666666666666666666666667"));
  CHECK(encloses(exp(log(Interval(P, 7))), "7"));
  const Interval mixed = Interval::hull(Interval(P, -1), Interval(P, 2));
  CHECK(mixed.contains_zero());
  CHECK(encloses(square(mixed), "4"));
  CHECK(encloses(square(mixed), "0"));
  CHECK(abs(mixed).lower_double() == 0.0);
  CHECK(encloses(mixed * mixed, "-2"));
  CHECK_THROWS_AS(Interval(P, 1) / mixed, PrecisionError);
}
