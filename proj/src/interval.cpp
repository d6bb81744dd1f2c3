#include "advec/interval.hpp"

#include <array>
#include <charconv>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <string>

namespace advec {

namespace {

using rounding::widen_down;
using rounding::widen_up;

constexpr int kLibmUlps = 4;
// exp(x) overflows past this argument.
constexpr double kExpMaxArg = 709.782712893384;

// Decimal value 0.d1d2d3... * 10^exp with no leading or trailing zeros in
// digits. Zero is represented by empty digits.
struct Decimal {
  bool negative = false;
  std::string digits;
  long exp = 0;
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Accepts [+-]digits[.digits][(e|E)[+-]digits] with at least one mantissa digit.
bool parse_decimal(std::string_view s, Decimal& out) {
  std::size_t i = 0;
  out = {};
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) out.negative = s[i++] == '-';
  std::string mantissa;
  long point = -1;
  std::size_t mantissa_chars = 0;
  for (; i < s.size(); ++i) {
    if (is_digit(s[i])) {
      mantissa.push_back(s[i]);
      ++mantissa_chars;
    } else if (s[i] == '.' && point < 0) {
      point = static_cast<long>(mantissa.size());
    } else {
      break;
    }
  }
  if (mantissa_chars == 0) return false;
  if (point < 0) point = static_cast<long>(mantissa.size());
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool neg_exp = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg_exp = s[i++] == '-';
    if (i >= s.size() || !is_digit(s[i])) return false;
    long e = 0;
    for (; i < s.size() && is_digit(s[i]); ++i) {
      e = e * 10 + (s[i] - '0');
      if (e > 100000) return false;
    }
    exp10 = neg_exp ? -e : e;
  }
  if (i != s.size()) return false;
  std::size_t first = mantissa.find_first_not_of('0');
  if (first == std::string::npos) {
    out.digits.clear();
    out.exp = 0;
    return true;
  }
  std::size_t last = mantissa.find_last_not_of('0');
  out.digits = mantissa.substr(first, last - first + 1);
  out.exp = point - static_cast<long>(first) + exp10;
  return true;
}

// Compares |a| with |b|.
int compare_magnitude(const Decimal& a, const Decimal& b) {
  if (a.digits.empty() || b.digits.empty()) {
    if (a.digits.empty() && b.digits.empty()) return 0;
    return a.digits.empty() ? -1 : 1;
  }
  if (a.exp != b.exp) return a.exp < b.exp ? -1 : 1;
  const int c = a.digits.compare(b.digits);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

}  // namespace

Interval Interval::from_decimal(std::string_view text) {
  const std::string_view s = trim(text);
  Decimal exact;
  if (!parse_decimal(s, exact)) throw Error(ErrorCode::ParseError, "malformed decimal '" + std::string(s) + "'");
  const char* begin = s.data();
  if (!s.empty() && s.front() == '+') ++begin;
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), x);
  if (ec == std::errc::result_out_of_range && !exact.digits.empty() && exact.exp < 0) {
    // Subnormal or underflowing to zero; strtod still returns the rounded value.
    const std::string copy(begin, s.data() + s.size());
    x = std::strtod(copy.c_str(), nullptr);
    ec = std::errc();
  }
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw Error(ErrorCode::ParseError, "decimal '" + std::string(s) + "' is not representable");
  }
  if (exact.digits.empty()) return Interval(0.0);

  // Exact decimal expansion of the parsed double (every binary fraction has a
  // finite one; 1100 significant digits cover the whole double range).
  std::array<char, 1200> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), std::abs(x), std::chars_format::scientific, 1100);
  Decimal rounded;
  if (res.ec != std::errc() || !parse_decimal(std::string_view(buf.data(), res.ptr - buf.data()), rounded)) {
    throw Error(ErrorCode::ParseError, "cannot expand '" + std::string(s) + "'");
  }
  rounded.negative = exact.negative;
  if (x == 0.0) {  // underflow to zero
    return exact.negative ? Interval(-std::numeric_limits<double>::denorm_min(), 0.0)
                          : Interval(0.0, std::numeric_limits<double>::denorm_min());
  }
  const int cmp = compare_magnitude(exact, rounded);
  if (cmp == 0) return Interval(x);
  // cmp > 0: the true magnitude exceeds |x|.
  const bool true_above = (cmp > 0) != exact.negative;
  return true_above ? Interval(x, rounding::next_up(x)) : Interval(rounding::next_down(x), x);
}

Interval pow(const Interval& base, unsigned exponent) {
  Interval result(1.0);
  Interval b = base;
  while (exponent > 0) {
    if (exponent & 1U) result = result * b;
    exponent >>= 1U;
    if (exponent > 0) b = sqr(b);
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << '[' << x.lo() << ", " << x.hi() << ']';
}

std::ostream& operator<<(std::ostream& os, const ComplexInterval& z) {
  return os << z.re << " + i" << z.im;
}

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  const Interval den = norm(b);
  if (den.lo() <= 0.0) throw Error(ErrorCode::DivByZeroInterval, "complex divisor may vanish");
  const ComplexInterval num = a * conj(b);
  return {num.re / den, num.im / den};
}

Interval pi_enclosure() noexcept {
  // The double nearest pi lies below pi.
  return Interval(std::numbers::pi, rounding::next_up(std::numbers::pi));
}

Interval sqrt_enclosure(const Interval& a) {
  if (a.lo() < 0.0) throw Error(ErrorCode::DomainError, "sqrt of interval with negative lower bound");
  return {rounding::sqrt_down(a.lo()), rounding::sqrt_up(a.hi())};
}

Interval exp_enclosure(const Interval& a) {
  if (a.hi() > kExpMaxArg) throw Error(ErrorCode::ExpOverflow, "exp argument above overflow threshold");
  auto lower = [](double x) {
    if (x == 0.0) return 1.0;
    if (x == -rounding::kInf) return 0.0;
    return std::max(0.0, widen_down(std::exp(x), kLibmUlps));
  };
  auto upper = [](double x) {
    if (x == 0.0) return 1.0;
    return widen_up(std::exp(x), kLibmUlps);
  };
  return {lower(a.lo()), upper(a.hi())};
}

Interval expm1_enclosure(const Interval& a) {
  if (a.hi() > kExpMaxArg) throw Error(ErrorCode::ExpOverflow, "expm1 argument above overflow threshold");
  auto lower = [](double x) {
    if (x == 0.0) return 0.0;
    return std::max(-1.0, widen_down(std::expm1(x), kLibmUlps));
  };
  auto upper = [](double x) {
    if (x == 0.0) return 0.0;
    return widen_up(std::expm1(x), kLibmUlps);
  };
  return {lower(a.lo()), upper(a.hi())};
}

namespace {

Interval clip_unit(double lo, double hi) { return {std::max(-1.0, lo), std::min(1.0, hi)}; }

template <class Fn>
Interval trig_enclosure(const Interval& theta, Fn fn) {
  if (!std::isfinite(theta.lo()) || !std::isfinite(theta.hi())) return {-1.0, 1.0};
  if (theta.is_point()) {
    const double v = fn(theta.lo());
    return clip_unit(widen_down(v, kLibmUlps), widen_up(v, kLibmUlps));
  }
  // Lipschitz bound about the midpoint; cos and sin have slope at most one.
  const double m = theta.mid();
  const double r = theta.rad();
  if (r >= 2.0) return {-1.0, 1.0};
  const double v = fn(m);
  return clip_unit(rounding::sub_down(widen_down(v, kLibmUlps), r), rounding::add_up(widen_up(v, kLibmUlps), r));
}

}  // namespace

Interval cos_enclosure(const Interval& theta) {
  return trig_enclosure(theta, [](double x) { return std::cos(x); });
}

Interval sin_enclosure(const Interval& theta) {
  return trig_enclosure(theta, [](double x) { return std::sin(x); });
}

ComplexInterval unit_complex_enclosure(const Interval& theta) {
  return {cos_enclosure(theta), sin_enclosure(theta)};
}

Interval expm1_over(const Interval& omega, double t) {
  if (omega.lo() < 0.0) throw Error(ErrorCode::DomainError, "expm1_over requires omega >= 0");
  if (!(t >= 0.0)) throw Error(ErrorCode::DomainError, "expm1_over requires t >= 0");
  if (t == 0.0) return Interval(0.0);

  // (e^{wt}-1)/w is increasing in w, bounded below by its limit t at w = 0.
  auto at = [t](double w) { return expm1_enclosure(Interval(w) * t) / Interval(w); };
  constexpr double kTinyProduct = 1e-290;

  double lo = t;
  if (omega.lo() > 0.0 && omega.lo() * t >= kTinyProduct) lo = std::max(t, at(omega.lo()).lo());

  double hi = t;
  if (omega.hi() > 0.0) {
    if (omega.hi() * t >= kTinyProduct) {
      hi = at(omega.hi()).hi();
    } else {
      hi = (exp_enclosure(Interval(omega.hi()) * t) * t).hi();
    }
  }
  return {lo, std::max(lo, hi)};
}

double erfc_upper(double x) {
  if (!(x >= 0.0)) throw Error(ErrorCode::DomainError, "erfc_upper requires x >= 0");
  if (x < 1.0) return 1.0;
  const double x2_lo = rounding::mul_down(x, x);
  const double numer = exp_enclosure(Interval(-x2_lo)).hi();
  const double denom = (Interval(x) * sqrt_enclosure(pi_enclosure())).lo();
  return std::min(1.0, rounding::div_up(numer, denom));
}

}  // namespace advec
