#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/constants/constants.hpp>

#include "advec/interval.hpp"
#include "containment.hpp"
#include "oracle.hpp"

using advec::ComplexInterval;
using advec::Error;
using advec::ErrorCode;
using advec::Interval;
using oracle::Big;
using oracle::Rational;

namespace {

template <class Fn>
ErrorCode code_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no advec::Error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("directed roundings bracket an inexact sum") {
  const double tiny = 0x1p-60;
  CHECK(advec::rounding::add_down(1.0, tiny) == 1.0);
  CHECK(advec::rounding::add_up(1.0, tiny) == advec::rounding::next_up(1.0));
  CHECK(advec::rounding::mul_up(3.0, 0.5) == 1.5);
  CHECK(advec::rounding::div_down(1.0, 3.0) < advec::rounding::div_up(1.0, 3.0));
  CHECK(advec::rounding::sub_up(0.0, tiny) == -tiny);
}

TEST_CASE("3-4-5 triangle stays a point") {
  const Interval h = advec::sqrt_enclosure(advec::sqr(Interval(3.0)) + advec::sqr(Interval(4.0)));
  CHECK(h.lo() == 5.0);
  CHECK(h.hi() == 5.0);
  CHECK(advec::abs_upper(ComplexInterval(Interval(3.0), Interval(4.0))) == 5.0);
}

TEST_CASE("decimal strings become one-ulp enclosures") {
  const Interval tenth = Interval::from_decimal("0.1");
  CHECK_FALSE(tenth.is_point());
  CHECK(tenth.hi() == advec::rounding::next_up(tenth.lo()));
  CHECK(oracle::contains(tenth, Rational(1, 10)));
  CHECK(Interval::from_decimal("0.5").is_point());
  CHECK(Interval::from_decimal("  -2.25e1 ").lo() == -22.5);
  CHECK(oracle::contains(Interval::from_decimal("1.01"), Rational(101, 100)));
  CHECK(oracle::contains(Interval::from_decimal("-0.095"), Rational(-95, 1000)));
  CHECK(code_of([] { (void)Interval::from_decimal("1.2.3"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { (void)Interval::from_decimal(""); }) == ErrorCode::ParseError);
  CHECK(code_of([] { (void)Interval::from_decimal("1e999"); }) == ErrorCode::ParseError);
  const Interval sub = Interval::from_decimal("1e-400");
  CHECK(sub.lo() == 0.0);
  CHECK(sub.hi() > 0.0);
}

TEST_CASE("error conditions carry their codes") {
  CHECK(code_of([] { (void)(Interval(1.0) / Interval(-1.0, 1.0)); }) == ErrorCode::DivByZeroInterval);
  CHECK(code_of([] { (void)advec::exp_enclosure(Interval(710.0)); }) == ErrorCode::ExpOverflow);
  CHECK(code_of([] { (void)advec::sqrt_enclosure(Interval(-1.0, 4.0)); }) == ErrorCode::DomainError);
  CHECK(code_of([] { (void)Interval(2.0, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { (void)advec::expm1_over(Interval(-1.0, 0.0), 1.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { (void)advec::erfc_upper(-0.5); }) == ErrorCode::DomainError);
}

TEST_CASE("exact special values of exp and expm1") {
  CHECK(advec::exp_enclosure(Interval(0.0)) == Interval(1.0));
  CHECK(advec::expm1_enclosure(Interval(0.0)) == Interval(0.0));
  CHECK(advec::exp_enclosure(Interval(-800.0)).lo() == 0.0);
}

TEST_CASE("pi and unit complex enclosures") {
  const Big pi = boost::math::constants::pi<Big>();
  CHECK(oracle::contains(advec::pi_enclosure(), pi));
  const ComplexInterval z = advec::unit_complex_enclosure(Interval(2.0));
  CHECK(oracle::contains(z.re, boost::multiprecision::cos(Big(2))));
  CHECK(oracle::contains(z.im, boost::multiprecision::sin(Big(2))));
  CHECK(z.re.width() < 1e-15);
  CHECK(advec::cos_enclosure(Interval(-10.0, 10.0)) == Interval(-1.0, 1.0));
}

TEST_CASE("expm1_over is continuous at omega = 0") {
  CHECK(advec::expm1_over(Interval(0.0), 0.7) == Interval(0.7));
  CHECK(advec::expm1_over(Interval(0.5), 0.0) == Interval(0.0));
  const Interval v = advec::expm1_over(Interval(0.5), 0.1);
  CHECK(oracle::contains(v, Big(boost::multiprecision::expm1(Big(0.05)) / Big(0.5))));
  const Interval near_zero = advec::expm1_over(Interval(0.0, 1e-300), 2.0);
  CHECK(near_zero.lo() == 2.0);
  CHECK(near_zero.hi() >= 2.0);
  CHECK(near_zero.hi() < 2.0 + 1e-12);
}

TEST_CASE("erfc upper bound") {
  CHECK(advec::erfc_upper(0.0) == 1.0);
  double prev = 2.0;
  for (double x = 0.0; x < 27.0; x += 0.25) {
    const double u = advec::erfc_upper(x);
    CHECK(Big(u) >= boost::math::erfc(Big(x)));
    CHECK(u <= prev);
    prev = u;
  }
  // Far tail: the bound is asymptotically sharp.
  CHECK(advec::erfc_upper(8.5) < 1.1 * 2.7623e-33);
}

TEST_CASE("complex helpers") {
  const ComplexInterval z(Interval(1.0), Interval(-2.0));
  CHECK(advec::conj(z).im == Interval(2.0));
  CHECK(advec::times_i(z).re == Interval(2.0));
  CHECK(advec::times_i(z).im == Interval(1.0));
  CHECK(advec::norm(z) == Interval(5.0));
  const ComplexInterval q = z / z;
  CHECK(q.re.contains(1.0));
  CHECK(q.im.contains(0.0));
  CHECK(code_of([&] { (void)(z / ComplexInterval(Interval(-1.0, 1.0), Interval(0.0))); }) == ErrorCode::DivByZeroInterval);
}

TEST_CASE("randomized containment against exact and 50-digit references") {
  for (const auto& check : containment::checks()) {
    CAPTURE(check.name);
    CHECK(containment::violations(check, 20000, 0x5eed + check.name.size()) == 0);
  }
}
