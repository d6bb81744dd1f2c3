#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "advec/problems.hpp"
#include "advec/verifier.hpp"
#include "oracle.hpp"

using advec::ApproxSolution;
using advec::CoeffSeq;
using advec::ComplexInterval;
using advec::ErrorCode;
using advec::Interval;
using advec::TailBound;
using cplx = std::complex<double>;

namespace {

std::vector<cplx> midpoints(const std::vector<ComplexInterval>& v) {
  std::vector<cplx> m;
  for (const auto& z : v) m.push_back(z.mid());
  return m;
}

CoeffSeq cosine_family(double c0, double s) {
  CoeffSeq c = CoeffSeq::zeros(1);
  c.set(0, ComplexInterval(Interval(c0)));
  c.set(1, ComplexInterval(Interval(s)));
  c.set(-1, ComplexInterval(Interval(s)));
  return c;
}

// Approximation with the given Chebyshev coefficients per mode, index k + N.
ApproxSolution hand_built(const CoeffSeq& c, int N, double t_max, const std::vector<std::vector<cplx>>& coeffs) {
  ApproxSolution a;
  a.N = N;
  a.t_max = t_max;
  a.c_used = c;
  for (const auto& v : coeffs) {
    a.modes.push_back({t_max, v});
    a.n = std::max(a.n, static_cast<int>(v.size()) - 1);
  }
  return a;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const advec::Error& e) {
    return e.code();
  }
  FAIL("no advec::Error thrown");
  return ErrorCode::InvalidArgument;
}

using oracle::Big;
using oracle::Rational;

struct RationalComplex {
  Rational re, im;
};

Big magnitude(const RationalComplex& z) {
  using boost::multiprecision::sqrt;
  return sqrt(Big(Rational(z.re * z.re + z.im * z.im)));
}

// Chebyshev derivative coefficients in exact arithmetic, d/dtau.
std::vector<RationalComplex> derivative_exact(const std::vector<RationalComplex>& a) {
  const std::size_t n = a.size() - 1;
  std::vector<RationalComplex> b(n + 1);
  for (std::size_t l = n; l-- > 0;) {
    const Rational f = 2 * Rational(static_cast<long>(l + 1));
    b[l].re = (l + 2 <= n ? b[l + 2].re : Rational(0)) + f * a[l + 1].re;
    b[l].im = (l + 2 <= n ? b[l + 2].im : Rational(0)) + f * a[l + 1].im;
  }
  b[0].re /= 2;
  b[0].im /= 2;
  return b;
}

}  // namespace

TEST_CASE("initial error") {
  SUBCASE("evaluates the series at t = 0") {
    // a~_k(t) = a0_k + T_1, so a~_k(0) = a0_k - 1 for each of the three modes.
    const CoeffSeq c = cosine_family(1.0, 0.0);
    const auto approx = hand_built(c, 1, 1.0, {{0.5, 1.0}, {0.25, 1.0}, {0.5, 1.0}});
    const std::vector<ComplexInterval> a0{ComplexInterval(Interval(0.5)), ComplexInterval(Interval(0.25)),
                                          ComplexInterval(Interval(0.5))};
    const double b = advec::initial_error_bound(a0, approx, TailBound::explicit_list());
    CHECK(b >= std::sqrt(3.0));
    CHECK(b <= std::sqrt(3.0) * (1 + 1e-15));
    CHECK(code_of([&] { (void)advec::initial_error_bound(std::span(a0).first(2), approx, TailBound()); }) ==
          ErrorCode::InvalidArgument);
  }
  SUBCASE("example 2 at N = 10 is the tail") {
    const auto p = advec::example2();
    const auto approx = advec::build_solution(p.c, midpoints(p.a0_provider(10)), 10, 8, 0.1);
    const double b = advec::initial_error_bound(p.a0_provider, approx, p.tail);
    const double tail = std::sqrt(2.0 / 3.0) * std::ldexp(1.0, -10);
    CHECK(b >= tail);
    CHECK(b <= tail * (1 + 1e-9));
  }
  SUBCASE("example 1 at N = 120 is at rounding level") {
    const auto p = advec::example1();
    const auto approx = advec::build_solution(p.c, midpoints(p.a0_provider(120)), 120, 4, 0.01);
    const double b = advec::initial_error_bound(p.a0_provider, approx, p.tail);
    CHECK(b > 0.0);
    CHECK(b <= 1e-15);
  }
}

TEST_CASE("residual of simple approximations") {
  SUBCASE("constant transport is resolved") {
    const auto p = advec::example2();
    CoeffSeq delta = cosine_family(1.0, 0.0);
    advec::IntegratorOptions opts;
    opts.tol = 1e-16;
    const auto approx = advec::build_solution(delta, midpoints(p.a0_provider(5)), 5, 20, 1.0, opts);
    CHECK(advec::residual_bound(approx, delta, 5) <= 1e-12);
  }
  SUBCASE("zero approximation has zero residual") {
    const auto c = advec::example3().c;
    const auto approx = hand_built(c, 2, 1.0, std::vector<std::vector<cplx>>(5, std::vector<cplx>(4)));
    const auto blocks = advec::residual_bound_blocks(approx, c, 2);
    // Only the underflow allowance remains.
    CHECK(blocks.total <= 1e-150);
  }
  SUBCASE("example 1 table row") {
    const auto p = advec::example1();
    advec::IntegratorOptions opts;
    opts.tol = 1e-16;
    const auto approx = advec::build_solution(p.c, midpoints(p.a0_provider(120)), 120, 15, 0.1, opts);
    const double r = advec::residual_bound(approx, p.c, 120);
    CHECK(r >= 1e-15);
    CHECK(r <= 1e-12);
  }
  SUBCASE("mismatched coefficients") {
    const auto approx = hand_built(cosine_family(1.0, 0.1), 0, 1.0, {{1.0}});
    CHECK(code_of([&] { (void)advec::residual_bound(approx, cosine_family(1.0, 0.2), 0); }) ==
          ErrorCode::CoefficientMismatch);
    CHECK(code_of([&] { (void)advec::residual_bound(approx, cosine_family(1.0, 0.1), -1); }) ==
          ErrorCode::InvalidArgument);
  }
}

TEST_CASE("residual against exact rational arithmetic") {
  // c = 1 + 0.5 cos x and random dyadic Chebyshev coefficients. The reference
  // is the same l2-of-l1 quantity evaluated exactly, and pointwise residuals
  // at sample times must sit below the bound as well.
  const CoeffSeq c = cosine_family(1.0, 0.25);
  const int N = 3;
  const int n = 5;
  const double t_max = 0.5;
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> num(-64, 64);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<cplx>> coeffs(2 * N + 1, std::vector<cplx>(n + 1));
    for (auto& mode : coeffs) {
      for (auto& v : mode) v = cplx(std::ldexp(num(rng), -5), std::ldexp(num(rng), -5));
    }
    const auto approx = hand_built(c, N, t_max, coeffs);
    const double bound = advec::residual_bound(approx, c, N);

    // Exact coefficients s_{k,l} of the residual series for |k| <= N + 1.
    const Rational chain = Rational(2) / oracle::exact(t_max);
    Big total = 0;
    std::vector<std::vector<RationalComplex>> res(2 * N + 3, std::vector<RationalComplex>(n + 1));
    for (int k = -N - 1; k <= N + 1; ++k) {
      auto& row = res[static_cast<std::size_t>(k + N + 1)];
      if (std::abs(k) <= N) {
        std::vector<RationalComplex> a(n + 1);
        for (int l = 0; l <= n; ++l) {
          const cplx v = coeffs[static_cast<std::size_t>(k + N)][static_cast<std::size_t>(l)];
          a[static_cast<std::size_t>(l)] = {oracle::exact(v.real()), oracle::exact(v.imag())};
        }
        const auto d = derivative_exact(a);
        for (int l = 0; l <= n; ++l) {
          row[static_cast<std::size_t>(l)].re += chain * d[static_cast<std::size_t>(l)].re;
          row[static_cast<std::size_t>(l)].im += chain * d[static_cast<std::size_t>(l)].im;
        }
      }
      for (int m = -N; m <= N; ++m) {
        const int j = k - m;
        if (std::abs(j) > 1) continue;
        const Rational cj = oracle::exact(c[j].re.mid());
        for (int l = 0; l <= n; ++l) {
          const cplx v = coeffs[static_cast<std::size_t>(m + N)][static_cast<std::size_t>(l)];
          // c_j * i m * (re + i im) = c_j m (-im + i re)
          row[static_cast<std::size_t>(l)].re += cj * m * -oracle::exact(v.imag());
          row[static_cast<std::size_t>(l)].im += cj * m * oracle::exact(v.real());
        }
      }
      Big l1 = 0;
      for (const auto& z : row) l1 += magnitude(z);
      total += l1 * l1;
    }
    using boost::multiprecision::sqrt;
    const Big ref = sqrt(total);
    CHECK(oracle::big(bound) >= ref);
    CHECK(oracle::big(bound) <= ref * Big(1.5));

    for (int q = 0; q <= 16; ++q) {
      const Rational tau = Rational(q, 8) - 1;
      Big sq = 0;
      for (const auto& row : res) {
        Rational t0 = 1, t1 = tau, re = 0, im = 0;
        for (int l = 0; l <= n; ++l) {
          const Rational Tl = l == 0 ? t0 : t1;
          re += row[static_cast<std::size_t>(l)].re * Tl;
          im += row[static_cast<std::size_t>(l)].im * Tl;
          if (l >= 1) {
            const Rational t2 = 2 * tau * t1 - t0;
            t0 = t1;
            t1 = t2;
          }
        }
        sq += Big(Rational(re * re + im * im));
      }
      CHECK(oracle::big(bound) >= sqrt(sq));
    }
  }
}

TEST_CASE("residual blocks") {
  // Single mode k = 1 with value 1: the tail block is ||c beyond||_1 * |k|.
  const CoeffSeq c = cosine_family(1.0, 0.25);
  const auto approx = hand_built(c, 1, 1.0, {{0.0}, {0.0}, {1.0}});
  const auto split0 = advec::residual_bound_blocks(approx, c, 0);
  CHECK(split0.tail >= 0.5);
  CHECK(split0.tail <= 0.5 * (1 + 1e-15));
  const auto full = advec::residual_bound_blocks(approx, c, 1);
  CHECK(full.tail == 0.0);
  const auto beyond = advec::residual_bound_blocks(approx, c, 5, TailBound::custom_upper(0.1));
  CHECK(beyond.tail >= 0.1);
  CHECK(beyond.tail <= 0.1 * (1 + 1e-15));
  CHECK(full.total >= full.head);
  CHECK(full.spill > 0.0);  // c_1 * i * a_1 lands at k = 2
}

TEST_CASE("total error formula") {
  SUBCASE("example rows against a 50-digit oracle") {
    struct Row {
      double omega, z0, r, t;
    };
    for (const Row& row : {Row{0.5, 1.888e-16, 6.6975e-14, 0.1}, Row{0.49, 2.2662e-17, 3.1829e-13, 0.1},
                           Row{0.5, 1e-15, 2e-13, 1.0}, Row{0.64, 3e-16, 1e-13, 3.0}}) {
      const double b = advec::total_error_bound(Interval(row.omega), row.z0, row.r, row.t);
      using boost::multiprecision::exp;
      const Big wt = oracle::big(row.omega) * oracle::big(row.t);
      const Big ref = exp(wt) * oracle::big(row.z0) + (exp(wt) - 1) / oracle::big(row.omega) * oracle::big(row.r);
      CHECK(oracle::big(b) >= ref);
      CHECK(oracle::big(b) <= ref * Big(1 + 1e-13));
    }
  }
  SUBCASE("degenerate cases") {
    CHECK(advec::total_error_bound(Interval(0.0), 1e-10, 0.0, 5.0) == 1e-10);
    CHECK(advec::total_error_bound(Interval(0.7), 3e-9, 1.0, 0.0) == 3e-9);
    const double flat = advec::total_error_bound(Interval(0.0), 0.0, 2.0, 3.0);
    CHECK(flat >= 6.0);
    CHECK(flat <= 6.0 * (1 + 1e-15));
    CHECK(code_of([] { (void)advec::total_error_bound(Interval(0.5), -1.0, 0.0, 1.0); }) == ErrorCode::InvalidArgument);
  }
  SUBCASE("monotone in every argument") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 5000; ++i) {
      const double w = u(rng), z = u(rng), r = u(rng), t = 5 * u(rng);
      const double b = advec::total_error_bound(Interval(w), z, r, t);
      CHECK(advec::total_error_bound(Interval(w), z, r, t * 1.01) >= b);
      CHECK(advec::total_error_bound(Interval(w), z * 1.01, r, t) >= b);
      CHECK(advec::total_error_bound(Interval(w), z, r * 1.01, t) >= b);
      CHECK(advec::total_error_bound(Interval(w * 1.01), z, r, t) >= b);
    }
  }
  SUBCASE("periodic variant") {
    const auto cert = advec::cert_from_omega(Interval(0.5), 1.0);
    const double b = advec::total_error_bound_periodic(cert, 1e-12, 1e-10, 2.5);
    using boost::multiprecision::exp;
    const Big ref = exp(Big(0.25)) * Big(1e-12) + exp(Big(-1)) * (exp(Big(1.25)) - 1) / Big(0.5) * Big(1e-10);
    CHECK(oracle::big(b) >= ref);
    CHECK(oracle::big(b) <= ref * Big(1 + 1e-13));
    CHECK(b < advec::total_error_bound(cert, 1e-12, 1e-10, 2.5));
    // Before one period both forms agree.
    CHECK(advec::total_error_bound_periodic(cert, 1e-12, 1e-10, 0.5) == advec::total_error_bound(cert, 1e-12, 1e-10, 0.5));
    CHECK(code_of([] { (void)advec::total_error_bound_periodic(advec::cert_from_omega(Interval(0.5)), 0, 0, 1); }) ==
          ErrorCode::PeriodRequired);
  }
}

TEST_CASE("verify pipeline") {
  SUBCASE("example 2 verifies") {
    const auto rep = advec::verify(advec::example2(), 30, 20, 0.1, 1e-14);
    CHECK(rep.verified);
    CHECK(rep.failure_stage.empty());
    CHECK(rep.omega.contains(0.49));
    CHECK(rep.total_error >= rep.initial_error);
    CHECK(rep.total_error <= 1e-8);
    CHECK(rep.exec_seconds >= rep.approx_seconds);
    CHECK(!rep.periodic_total_error.has_value());
  }
  SUBCASE("automatic degree") {
    const auto rep = advec::verify(advec::example3(), 20, advec::n_auto, 0.2, 1e-14);
    CHECK(rep.verified);
    CHECK(rep.n >= 8);
  }
  SUBCASE("a period adds the periodic bound") {
    const auto rep = advec::verify(advec::example2(), 20, 20, 0.1, 1e-14, 0.05);
    REQUIRE(rep.periodic_total_error.has_value());
    CHECK(*rep.periodic_total_error <= rep.total_error);
  }
  SUBCASE("failures are reported") {
    auto p = advec::example2();
    p.c = cosine_family(1.0, 0.3);
    const auto rep = advec::verify(p, 10, 10, 0.1);
    CHECK(!rep.verified);
    CHECK(rep.failure_stage == "certify");
    CHECK(rep.failure_code == "DissipativityUnverified");
    const auto bad = advec::verify(advec::example2(), 10, 10, -1.0);
    CHECK(!bad.verified);
    CHECK(bad.failure_code == "InvalidArgument");
  }
}
