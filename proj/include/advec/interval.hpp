#pragma once

// Outward-rounded interval arithmetic over IEEE double.
//
// Rounding never touches the floating-point environment. Each elementary
// operation is evaluated in round-to-nearest and the exact error is recovered
// with an error-free transformation (TwoSum, FMA-based TwoProduct, exact
// division and square-root remainders). The sign of that error tells which
// side of the true value the rounded result fell on, so every endpoint ends
// up directed-rounded to within one ulp. Near the underflow threshold, where
// the error terms stop being exact, results are widened by one ulp on both
// sides instead.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string_view>

#include "advec/error.hpp"

namespace advec {

namespace rounding {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kMax = std::numeric_limits<double>::max();
// Below this magnitude FMA residuals may underflow and lose exactness.
inline constexpr double kEftFloor = 0x1p-900;

inline double next_up(double x) noexcept {
  if (std::isnan(x) || x == kInf) return x;
  if (x == 0.0) return std::numeric_limits<double>::denorm_min();
  auto bits = std::bit_cast<std::uint64_t>(x);
  bits = x > 0.0 ? bits + 1 : bits - 1;
  return std::bit_cast<double>(bits);
}

inline double next_down(double x) noexcept { return -next_up(-x); }

inline double widen_up(double x, int ulps) noexcept {
  for (int i = 0; i < ulps; ++i) x = next_up(x);
  return x;
}

inline double widen_down(double x, int ulps) noexcept {
  for (int i = 0; i < ulps; ++i) x = next_down(x);
  return x;
}

/// Lower and upper directed roundings of one exact real operation.
struct Bounds {
  double lo;
  double hi;
};

namespace detail {

inline Bounds from_error_sign(double r, double err) noexcept {
  if (err > 0.0) return {r, next_up(r)};
  if (err < 0.0) return {next_down(r), r};
  return {r, r};
}

// r finite and nonzero: steps one ulp towards the side given by the sign of err.
inline Bounds from_error_sign_finite(double r, double err) noexcept {
  if (err == 0.0) return {r, r};
  const auto bits = std::bit_cast<std::uint64_t>(r);
  const bool up = err > 0.0;
  const double other = std::bit_cast<double>(up == (r > 0.0) ? bits + 1 : bits - 1);
  return up ? Bounds{r, other} : Bounds{other, r};
}

inline Bounds non_finite(double r) noexcept {
  if (std::isnan(r)) return {-kInf, kInf};
  return r > 0.0 ? Bounds{kMax, kInf} : Bounds{-kInf, -kMax};
}

}  // namespace detail

inline Bounds add(double a, double b) noexcept {
  const double s = a + b;
  if (std::abs(s) <= kMax) [[likely]] {
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    // A zero sum is always exact in round-to-nearest.
    return s == 0.0 ? Bounds{s, s} : detail::from_error_sign_finite(s, err);
  }
  if (std::isinf(a) || std::isinf(b)) return std::isnan(s) ? detail::non_finite(s) : Bounds{s, s};
  return detail::non_finite(s);
}

inline Bounds sub(double a, double b) noexcept { return add(a, -b); }

inline Bounds mul(double a, double b) noexcept {
  const double p = a * b;
  const double ap = std::abs(p);
  if (ap >= kEftFloor && ap <= kMax) [[likely]] return detail::from_error_sign_finite(p, std::fma(a, b, -p));
  if (a == 0.0 || b == 0.0) return {0.0, 0.0};
  if (!std::isfinite(p)) {
    if (std::isinf(a) || std::isinf(b)) return {p, p};
    return detail::non_finite(p);
  }
  if (std::abs(p) < kEftFloor) return {next_down(p), next_up(p)};
  return detail::from_error_sign(p, std::fma(a, b, -p));
}

/// Requires b != 0.
inline Bounds div(double a, double b) noexcept {
  if (a == 0.0) return {0.0, 0.0};
  const double q = a / b;
  if (!std::isfinite(q)) {
    if (std::isinf(a)) return {q, q};
    return detail::non_finite(q);
  }
  if (std::isinf(b)) return {0.0, 0.0};
  if (std::abs(q) < kEftFloor || std::abs(a) < kEftFloor) return {next_down(q), next_up(q)};
  const double rem = std::fma(-q, b, a);  // a - q*b, exact
  if (rem == 0.0) return {q, q};
  return (rem > 0.0) == (b > 0.0) ? Bounds{q, next_up(q)} : Bounds{next_down(q), q};
}

/// Requires x >= 0.
inline Bounds sqrt(double x) noexcept {
  const double s = std::sqrt(x);
  if (x == 0.0 || std::isinf(x)) return {s, s};
  if (x < kEftFloor) return {std::max(0.0, next_down(s)), next_up(s)};
  return detail::from_error_sign(s, std::fma(-s, s, x));
}

inline double add_up(double a, double b) noexcept { return add(a, b).hi; }
inline double add_down(double a, double b) noexcept { return add(a, b).lo; }
inline double sub_up(double a, double b) noexcept { return add(a, -b).hi; }
inline double sub_down(double a, double b) noexcept { return add(a, -b).lo; }
inline double mul_up(double a, double b) noexcept { return mul(a, b).hi; }
inline double mul_down(double a, double b) noexcept { return mul(a, b).lo; }
inline double div_up(double a, double b) noexcept { return div(a, b).hi; }
inline double div_down(double a, double b) noexcept { return div(a, b).lo; }
inline double sqrt_up(double x) noexcept { return sqrt(x).hi; }
inline double sqrt_down(double x) noexcept { return sqrt(x).lo; }

}  // namespace rounding

/// Closed real interval [lo, hi]. Endpoints may be infinite only as an
/// overflow sentinel.
class Interval {
 public:
  constexpr Interval() noexcept = default;
  constexpr explicit Interval(double x) noexcept : lo_(x), hi_(x) {}
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw Error(ErrorCode::InvalidArgument, "interval with lo > hi or NaN endpoint");
  }

  /// Tightest interval (at most one ulp wide) enclosing a decimal literal such
  /// as "0.49" or "-1.5e-3".
  static Interval from_decimal(std::string_view text);

  constexpr double lo() const noexcept { return lo_; }
  constexpr double hi() const noexcept { return hi_; }

  double mid() const noexcept {
    if (lo_ == -hi_) return 0.0;
    const double m = 0.5 * lo_ + 0.5 * hi_;
    return std::clamp(m, lo_, hi_);
  }
  /// Upper bound of the radius about mid().
  double rad() const noexcept {
    const double m = mid();
    return std::max(rounding::sub_up(hi_, m), rounding::sub_up(m, lo_));
  }
  double width() const noexcept { return rounding::sub_up(hi_, lo_); }
  /// Largest |x| over the interval.
  double mag() const noexcept { return std::max(std::abs(lo_), std::abs(hi_)); }
  /// Smallest |x| over the interval.
  double mig() const noexcept {
    if (lo_ <= 0.0 && hi_ >= 0.0) return 0.0;
    return std::min(std::abs(lo_), std::abs(hi_));
  }

  bool is_point() const noexcept { return lo_ == hi_; }
  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const noexcept { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool overlaps(const Interval& o) const noexcept { return lo_ <= o.hi_ && o.lo_ <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;

  Interval operator-() const noexcept { return raw(-hi_, -lo_); }

  friend Interval operator+(const Interval& a, const Interval& b) noexcept {
    return raw(rounding::add_down(a.lo_, b.lo_), rounding::add_up(a.hi_, b.hi_));
  }
  friend Interval operator-(const Interval& a, const Interval& b) noexcept {
    return raw(rounding::sub_down(a.lo_, b.hi_), rounding::sub_up(a.hi_, b.lo_));
  }
  friend Interval operator*(const Interval& a, const Interval& b) noexcept {
    if (b.is_point()) return a * b.lo_;
    if (a.is_point()) return b * a.lo_;
    const auto p1 = rounding::mul(a.lo_, b.lo_);
    const auto p2 = rounding::mul(a.lo_, b.hi_);
    const auto p3 = rounding::mul(a.hi_, b.lo_);
    const auto p4 = rounding::mul(a.hi_, b.hi_);
    return raw(std::min({p1.lo, p2.lo, p3.lo, p4.lo}), std::max({p1.hi, p2.hi, p3.hi, p4.hi}));
  }
  friend Interval operator*(const Interval& a, double d) noexcept {
    if (d >= 0.0) return raw(rounding::mul_down(a.lo_, d), rounding::mul_up(a.hi_, d));
    return raw(rounding::mul_down(a.hi_, d), rounding::mul_up(a.lo_, d));
  }
  friend Interval operator*(double d, const Interval& a) noexcept { return a * d; }
  friend Interval operator+(const Interval& a, double d) noexcept { return a + Interval(d); }
  friend Interval operator-(const Interval& a, double d) noexcept { return a - Interval(d); }
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, double d) { return a / Interval(d); }

  Interval& operator+=(const Interval& o) noexcept { return *this = *this + o; }
  Interval& operator-=(const Interval& o) noexcept { return *this = *this - o; }
  Interval& operator*=(const Interval& o) noexcept { return *this = *this * o; }

  friend Interval hull(const Interval& a, const Interval& b) noexcept {
    return raw(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
  }

 private:
  static Interval raw(double lo, double hi) noexcept {
    Interval r;
    r.lo_ = lo;
    r.hi_ = hi;
    return r;
  }
  friend Interval sqr(const Interval& a) noexcept;
  friend Interval abs(const Interval& a) noexcept;

  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo_ <= 0.0 && b.hi_ >= 0.0) throw Error(ErrorCode::DivByZeroInterval, "divisor interval contains zero");
  const auto q1 = rounding::div(a.lo_, b.lo_);
  const auto q2 = rounding::div(a.lo_, b.hi_);
  const auto q3 = rounding::div(a.hi_, b.lo_);
  const auto q4 = rounding::div(a.hi_, b.hi_);
  return Interval::raw(std::min({q1.lo, q2.lo, q3.lo, q4.lo}), std::max({q1.hi, q2.hi, q3.hi, q4.hi}));
}

/// x^2 with the dependency respected (never negative).
inline Interval sqr(const Interval& a) noexcept {
  const double m = a.mig();
  const double M = a.mag();
  return Interval::raw(rounding::mul_down(m, m), rounding::mul_up(M, M));
}

inline Interval abs(const Interval& a) noexcept { return Interval::raw(a.mig(), a.mag()); }

/// Integer power by repeated squaring.
Interval pow(const Interval& base, unsigned exponent);

std::ostream& operator<<(std::ostream& os, const Interval& x);

/// Rectangular complex interval re + i*im.
struct ComplexInterval {
  Interval re;
  Interval im;

  ComplexInterval() = default;
  ComplexInterval(const Interval& re_part, const Interval& im_part) : re(re_part), im(im_part) {}
  explicit ComplexInterval(const Interval& re_part) : re(re_part) {}
  explicit ComplexInterval(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> mid() const noexcept { return {re.mid(), im.mid()}; }
  bool is_point() const noexcept { return re.is_point() && im.is_point(); }
  bool contains(std::complex<double> z) const noexcept { return re.contains(z.real()) && im.contains(z.imag()); }
  bool contains(const ComplexInterval& z) const noexcept { return re.contains(z.re) && im.contains(z.im); }
  bool overlaps(const ComplexInterval& z) const noexcept { return re.overlaps(z.re) && im.overlaps(z.im); }

  friend bool operator==(const ComplexInterval&, const ComplexInterval&) = default;

  ComplexInterval operator-() const noexcept { return {-re, -im}; }
  ComplexInterval& operator+=(const ComplexInterval& o) noexcept {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexInterval& operator-=(const ComplexInterval& o) noexcept {
    re -= o.re;
    im -= o.im;
    return *this;
  }
};

inline ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) noexcept {
  return {a.re + b.re, a.im + b.im};
}
inline ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) noexcept {
  return {a.re - b.re, a.im - b.im};
}
inline ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) noexcept {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ComplexInterval operator*(const ComplexInterval& a, const Interval& s) noexcept {
  return {a.re * s, a.im * s};
}
inline ComplexInterval operator*(const Interval& s, const ComplexInterval& a) noexcept { return a * s; }
inline ComplexInterval operator*(const ComplexInterval& a, double s) noexcept { return {a.re * s, a.im * s}; }
inline ComplexInterval operator*(const ComplexInterval& a, std::complex<double> z) noexcept {
  return {a.re * z.real() - a.im * z.imag(), a.re * z.imag() + a.im * z.real()};
}
ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);

inline ComplexInterval conj(const ComplexInterval& a) noexcept { return {a.re, -a.im}; }

/// Multiplication by the imaginary unit; exact.
inline ComplexInterval times_i(const ComplexInterval& a) noexcept { return {-a.im, a.re}; }

/// Upper bound of |z| over the rectangle, taken at the farthest corner.
inline double abs_upper(const ComplexInterval& a) noexcept {
  const double x = a.re.mag();
  const double y = a.im.mag();
  if (y == 0.0) return x;
  if (x == 0.0) return y;
  return rounding::sqrt_up(rounding::add_up(rounding::mul_up(x, x), rounding::mul_up(y, y)));
}

/// Lower bound of |z| over the rectangle.
inline double abs_lower(const ComplexInterval& a) noexcept {
  const double x = a.re.mig();
  const double y = a.im.mig();
  if (y == 0.0) return x;
  if (x == 0.0) return y;
  return rounding::sqrt_down(rounding::add_down(rounding::mul_down(x, x), rounding::mul_down(y, y)));
}

/// Enclosure of the modulus.
inline Interval abs(const ComplexInterval& a) { return {abs_lower(a), abs_upper(a)}; }

/// Enclosure of |z|^2 = re^2 + im^2.
inline Interval norm(const ComplexInterval& a) noexcept { return sqr(a.re) + sqr(a.im); }

std::ostream& operator<<(std::ostream& os, const ComplexInterval& z);

// Elementary-function enclosures. Library results are widened by four ulps
// where no exact remainder is available.

Interval pi_enclosure() noexcept;
Interval sqrt_enclosure(const Interval& a);
Interval exp_enclosure(const Interval& a);
Interval expm1_enclosure(const Interval& a);
Interval cos_enclosure(const Interval& theta);
Interval sin_enclosure(const Interval& theta);

/// e^{i*theta}.
ComplexInterval unit_complex_enclosure(const Interval& theta);

/// (e^{omega t} - 1) / omega for omega >= 0, t >= 0, continuous at omega = 0
/// where the value is t.
Interval expm1_over(const Interval& omega, double t);

/// Upper bound of erfc(x), x >= 0: 1 for x < 1, else e^{-x^2}/(x sqrt(pi)).
double erfc_upper(double x);

}  // namespace advec
