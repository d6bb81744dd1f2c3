#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <vector>

#include "advec/seq.hpp"
#include "advec/tail_bound.hpp"
#include "oracle.hpp"

using advec::CoeffSeq;
using advec::ComplexInterval;
using advec::Interval;
using advec::TailBound;
using oracle::Big;
using oracle::Rational;
using oracle::exact;

namespace {

std::vector<std::complex<double>> random_points(oracle::DoubleGen& g, int K) {
  std::vector<std::complex<double>> v;
  for (int k = -K; k <= K; ++k) v.emplace_back(g.uniform(-1.0, 1.0), g.uniform(-1.0, 1.0));
  return v;
}

}  // namespace

TEST_CASE("storage, growth and restriction") {
  CoeffSeq a;
  CHECK(a.empty());
  CHECK(a.extent() == 0);
  a.set(2, ComplexInterval(Interval(1.0)));
  a.set(-3, ComplexInterval(Interval(2.0)));
  CHECK(a.first() == -3);
  CHECK(a.last() == 2);
  CHECK(a.extent() == 3);
  CHECK(a[0] == ComplexInterval{});
  CHECK(a[7] == ComplexInterval{});
  const CoeffSeq r = a.restrict(2);
  CHECK(r.first() == -2);
  CHECK(r[2].re == Interval(1.0));
  CHECK(r[-3] == ComplexInterval{});
  CHECK(CoeffSeq::zeros(4).size() == 9);
}

TEST_CASE("B multiplies by i k") {
  const std::vector<std::complex<double>> pts{{1, 0}, {2, 1}, {3, -1}};
  const CoeffSeq b = advec::op_B(CoeffSeq::from_points(pts));
  CHECK(b[0] == ComplexInterval{});
  // i * 1 * (3 - i) = 1 + 3i
  CHECK(b[1].re == Interval(1.0));
  CHECK(b[1].im == Interval(3.0));
  // i * (-1) * 1 = -i
  CHECK(b[-1].re == Interval(0.0));
  CHECK(b[-1].im == Interval(-1.0));
}

TEST_CASE("Cauchy product contains the exact convolution") {
  oracle::DoubleGen g(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int Ka = g.pick(0, 6), Kb = g.pick(0, 6);
    const auto pa = random_points(g, Ka), pb = random_points(g, Kb);
    const CoeffSeq c = advec::conv(CoeffSeq::from_points(pa), CoeffSeq::from_points(pb));
    CHECK(c.first() == -(Ka + Kb));
    CHECK(c.last() == Ka + Kb);
    for (int k = -(Ka + Kb); k <= Ka + Kb; ++k) {
      Rational re = 0, im = 0;
      for (int m = -Kb; m <= Kb; ++m) {
        const int j = k - m;
        if (j < -Ka || j > Ka) continue;
        const auto x = pa[static_cast<std::size_t>(j + Ka)];
        const auto y = pb[static_cast<std::size_t>(m + Kb)];
        re += exact(x.real()) * exact(y.real()) - exact(x.imag()) * exact(y.imag());
        im += exact(x.real()) * exact(y.imag()) + exact(x.imag()) * exact(y.real());
      }
      CHECK(oracle::contains(c[k].re, re));
      CHECK(oracle::contains(c[k].im, im));
    }
  }
}

TEST_CASE("norms bound the exact values") {
  oracle::DoubleGen g(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = random_points(g, g.pick(0, 20));
    const CoeffSeq a = CoeffSeq::from_points(p);
    Rational sq = 0;
    Big l1 = 0;
    for (const auto& z : p) {
      const Rational n2 = exact(z.real()) * exact(z.real()) + exact(z.imag()) * exact(z.imag());
      sq += n2;
      l1 += boost::multiprecision::sqrt(Big(n2));
    }
    const Interval l2 = advec::l2_norm_enclosure(a);
    CHECK(exact(l2.lo()) * exact(l2.lo()) <= sq);
    CHECK(sq <= exact(l2.hi()) * exact(l2.hi()));
    CHECK(Big(advec::l1_norm_upper(a)) >= l1);
  }
}

TEST_CASE("Hermitian symmetry check") {
  CoeffSeq c = CoeffSeq::zeros(3);
  c.set(0, ComplexInterval(Interval(1.0)));
  c.set(3, ComplexInterval(Interval(0.0), Interval(-0.15)));
  c.set(-3, ComplexInterval(Interval(0.0), Interval(0.15)));
  CHECK(c.is_hermitian());
  c.set(-3, ComplexInterval(Interval(0.0), Interval(-0.15)));
  CHECK_FALSE(c.is_hermitian());
  CoeffSeq imaginary_mean = CoeffSeq::zeros(0);
  imaginary_mean.set(0, ComplexInterval(Interval(1.0), Interval(0.5)));
  CHECK_FALSE(imaginary_mean.is_hermitian());
}

TEST_CASE("split moves stored and unstored mass into the tail") {
  CoeffSeq c = CoeffSeq::zeros(3);
  c.set(0, ComplexInterval(Interval(1.0)));
  c.set(2, ComplexInterval(Interval(0.25)));
  c.set(-2, ComplexInterval(Interval(0.25)));
  c.set(3, ComplexInterval(Interval(0.0), Interval(-0.125)));
  c.set(-3, ComplexInterval(Interval(0.0), Interval(0.125)));
  const auto s = advec::split(c, 2);
  CHECK(s.head.extent() == 2);
  CHECK(s.tail_l1_upper == 0.25);
  CHECK(advec::split(c, 3).tail_l1_upper == 0.0);
  CHECK(advec::split(c, 3, TailBound::custom_upper(1e-3)).tail_l1_upper == 1e-3);
}

TEST_CASE("tail bounds") {
  SUBCASE("geometric tail of the rational initial datum") {
    const TailBound t = TailBound::geometric(advec::sqrt_enclosure(Interval(2.0) / Interval(3.0)), Interval(0.5));
    const Big ref = boost::multiprecision::sqrt(Big(2) / 3) / 1024;  // ~7.97e-4
    CHECK(Big(t.evaluate(10)) >= ref);
    CHECK(t.evaluate(10) <= 1.000001 * static_cast<double>(ref));
    CHECK(t.evaluate(10) == doctest::Approx(7.97e-4).epsilon(1e-3));
  }
  SUBCASE("Gaussian erfc tail") {
    const TailBound t = TailBound::gaussian_erfc(Interval(0.5), Interval(10.0));
    for (int N : {10, 60, 120, 200}) {
      const Big ref = boost::multiprecision::sqrt(boost::math::erfc(Big(N) / (10 * boost::multiprecision::sqrt(Big(2))))) / 2;
      CHECK(Big(t.evaluate(N)) >= ref);
      // The Mills-ratio bound exceeds erfc by at most a factor 1 + 1/x^2.
      const double x = N / (10 * std::sqrt(2.0));
      if (N >= 60) CHECK(t.evaluate(N) <= std::sqrt(1 + 1 / (x * x)) * static_cast<double>(ref));
    }
  }
  SUBCASE("explicit list") {
    const TailBound t = TailBound::explicit_list({{-5, 3.0}, {5, 4.0}, {2, 1.0}});
    CHECK(t.evaluate(1) >= std::sqrt(26.0));
    CHECK(t.evaluate(4) == 5.0);
    CHECK(t.evaluate(5) == 0.0);
    CHECK(TailBound().evaluate(0) == 0.0);
  }
  SUBCASE("custom constant") { CHECK(TailBound::custom_upper(2.5e-9).evaluate(1000) == 2.5e-9); }
  SUBCASE("all kinds are non-negative and non-increasing") {
    const std::vector<TailBound> kinds{
        TailBound::gaussian_erfc(Interval(0.5), Interval(10.0)),
        TailBound::geometric(Interval(1.5), Interval(0.9)),
        TailBound::explicit_list({{1, 0.5}, {-4, 0.25}, {9, 1e-3}}),
        TailBound::custom_upper(1e-7),
    };
    for (const auto& t : kinds) {
      double prev = t.evaluate(0);
      for (int N = 0; N <= 400; ++N) {
        const double v = t.evaluate(N);
        CHECK(v >= 0.0);
        CHECK(v <= prev);
        prev = v;
      }
    }
  }
  CHECK_THROWS_AS(TailBound::custom_upper(1.0).evaluate(-1), advec::Error);
}
