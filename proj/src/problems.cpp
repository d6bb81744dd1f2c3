#include "advec/problems.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <map>
#include <memory>

namespace advec {

namespace {

std::vector<ComplexInterval> geometric_modes(int N, const Interval& r) {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 0");
  std::vector<ComplexInterval> a(static_cast<std::size_t>(2 * N + 1));
  Interval p(1.0);
  for (int k = 0; k <= N; ++k) {
    a[static_cast<std::size_t>(N + k)] = ComplexInterval(p);
    a[static_cast<std::size_t>(N - k)] = ComplexInterval(p);
    p = p * r;
  }
  return a;
}

// ||(r^{|k|})_{|k|>N}||_2 = |r| sqrt(2 / (1 - r^2)) |r|^N.
TailBound geometric_tail(const Interval& r) {
  const Interval m = abs(r);
  const Interval pref = m * sqrt_enclosure(Interval(2.0) / (Interval(1.0) - sqr(m)));
  return TailBound::geometric(pref, m);
}

TailBound example2_tail() { return TailBound::geometric(sqrt_enclosure(Interval(2.0) / Interval(3.0)), Interval(0.5)); }

std::vector<ComplexInterval> example2_modes(int N) {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 0");
  if (N > 1000) throw Error(ErrorCode::InvalidArgument, "N too large for exact (-2)^{-|k|}");
  std::vector<ComplexInterval> a(static_cast<std::size_t>(2 * N + 1));
  for (int k = -N; k <= N; ++k) {
    const int m = std::abs(k);
    a[static_cast<std::size_t>(k + N)] = ComplexInterval(Interval(std::ldexp(m % 2 == 0 ? 1.0 : -1.0, -m)));
  }
  return a;
}

}  // namespace

ProblemSpec example1() {
  ProblemSpec p;
  p.name = "example1";
  // sin^2(x - 1) = 1/2 - (e^{2i(x-1)} + e^{-2i(x-1)})/4.
  const ComplexInterval e2i = unit_complex_enclosure(Interval(2.0));
  CoeffSeq c = CoeffSeq::zeros(2);
  c.set(0, ComplexInterval(Interval::from_decimal("1.01")));
  c.set(-2, e2i * -0.25);
  c.set(2, conj(e2i) * -0.25);
  p.c = std::move(c);

  const Interval pref = Interval(1.0) / (Interval(20.0) * sqrt_enclosure(pi_enclosure()));
  p.a0_provider = [pref](int N) {
    if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 0");
    std::vector<ComplexInterval> a(static_cast<std::size_t>(2 * N + 1));
    for (int k = -N; k <= N; ++k) {
      const double kk = static_cast<double>(k) * static_cast<double>(k);
      const Interval mag = pref * exp_enclosure(-(Interval(kk) / 400.0));
      a[static_cast<std::size_t>(k + N)] = unit_complex_enclosure(Interval(-static_cast<double>(k))) * mag;
    }
    return a;
  };
  p.tail = TailBound::gaussian_erfc(Interval(0.5), Interval(10.0));
  return p;
}

ProblemSpec example2() {
  ProblemSpec p;
  p.name = "example2";
  CoeffSeq c = CoeffSeq::zeros(2);
  c.set(0, ComplexInterval(Interval(1.0)));
  const ComplexInterval half = ComplexInterval(Interval::from_decimal("0.245"));
  c.set(-2, half);
  c.set(2, half);
  p.c = std::move(c);
  p.a0_provider = example2_modes;
  p.tail = example2_tail();
  return p;
}

ProblemSpec example3() {
  ProblemSpec p;
  p.name = "example3";
  // 0.3 sin 3x = (0.3 / 2i) e^{3ix} - (0.3 / 2i) e^{-3ix}; 0.3 / 2i = -0.15 i.
  const Interval s = Interval::from_decimal("0.15");
  const Interval q = Interval::from_decimal("-0.095");
  CoeffSeq c = CoeffSeq::zeros(3);
  c.set(0, ComplexInterval(Interval(-1.0)));
  c.set(-2, ComplexInterval(q));
  c.set(2, ComplexInterval(q));
  c.set(3, ComplexInterval(Interval(0.0), -s));
  c.set(-3, ComplexInterval(Interval(0.0), s));
  p.c = std::move(c);
  p.a0_provider = example2_modes;
  p.tail = example2_tail();
  return p;
}

namespace {

// "prefix[k]" -> k.
std::optional<int> indexed_key(std::string_view key, std::string_view prefix) {
  if (key.size() < prefix.size() + 3 || key.substr(0, prefix.size()) != prefix) return std::nullopt;
  if (key[prefix.size()] != '[' || key.back() != ']') return std::nullopt;
  const std::string_view digits = key.substr(prefix.size() + 1, key.size() - prefix.size() - 2);
  int k = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(ErrorCode::ParseError, "bad index in '" + std::string(key) + "'");
  }
  return k;
}

ComplexInterval complex_value(const std::string& key, const std::string& value) {
  const auto parts = split_list(value);
  if (parts.empty() || parts.size() > 2) {
    throw Error(ErrorCode::ParseError, "'" + key + "' needs 're' or 're, im'");
  }
  return {Interval::from_decimal(parts[0]), parts.size() == 2 ? Interval::from_decimal(parts[1]) : Interval(0.0)};
}

double upper_decimal(const std::string& text) { return Interval::from_decimal(text).hi(); }

TailBound parse_tail(const std::string& value) {
  const auto parts = split_list(value);
  if (parts.empty()) throw Error(ErrorCode::ParseError, "empty tail entry");
  const std::string& kind = parts[0];
  auto need = [&](std::size_t count) {
    if (parts.size() != count + 1) throw Error(ErrorCode::ParseError, "tail '" + kind + "' takes " + std::to_string(count) + " values");
  };
  if (kind == "geometric") {
    need(2);
    return TailBound::geometric(Interval::from_decimal(parts[1]), Interval::from_decimal(parts[2]));
  }
  if (kind == "erfc") {
    need(2);
    return TailBound::gaussian_erfc(Interval::from_decimal(parts[1]), Interval::from_decimal(parts[2]));
  }
  if (kind == "custom") {
    need(1);
    return TailBound::custom_upper(upper_decimal(parts[1]));
  }
  if (kind == "explicit") {
    need(0);
    return TailBound::explicit_list();
  }
  throw Error(ErrorCode::ParseError, "unknown tail kind '" + kind + "'");
}

}  // namespace

ProblemSpec custom(const KeyValues& config) {
  ProblemSpec p;
  p.name = config.get("name").value_or("custom");
  std::map<int, ComplexInterval> c_list;
  std::map<int, ComplexInterval> a0_list;
  for (const auto& [key, value] : config.entries()) {
    if (auto k = indexed_key(key, "c")) {
      c_list[*k] = complex_value(key, value);
    } else if (auto k0 = indexed_key(key, "a0")) {
      a0_list[*k0] = complex_value(key, value);
    } else if (key != "name" && key != "a0.power" && key != "tail" && key != "c_tail.l1" &&
               key != "c_tail.weighted_l1" && key != "period") {
      throw Error(ErrorCode::ParseError, "unknown key '" + key + "'");
    }
  }
  if (c_list.empty()) throw Error(ErrorCode::ParseError, "no c[k] entries");

  const int K = std::max(std::abs(c_list.begin()->first), std::abs(c_list.rbegin()->first));
  p.c = CoeffSeq::zeros(K);
  for (const auto& [k, v] : c_list) p.c.set(k, v);
  if (!p.c.is_hermitian()) throw Error(ErrorCode::CoefficientNotReal, "c[-k] must equal conj(c[k])");

  const auto power = config.get("a0.power");
  if (power && !a0_list.empty()) throw Error(ErrorCode::ParseError, "give either a0[k] entries or a0.power");
  if (power) {
    const Interval r = Interval::from_decimal(*power);
    if (!(abs(r).hi() < 1.0)) throw Error(ErrorCode::ParseError, "a0.power needs |r| < 1");
    p.a0_provider = [r](int N) { return geometric_modes(N, r); };
    p.tail = geometric_tail(r);
  } else {
    if (a0_list.empty()) throw Error(ErrorCode::ParseError, "no initial coefficients (a0[k] or a0.power)");
    auto shared = std::make_shared<const std::map<int, ComplexInterval>>(a0_list);
    p.a0_provider = [shared](int N) {
      if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 0");
      std::vector<ComplexInterval> a(static_cast<std::size_t>(2 * N + 1));
      for (const auto& [k, v] : *shared) {
        if (std::abs(k) <= N) a[static_cast<std::size_t>(k + N)] = v;
      }
      return a;
    };
    std::vector<std::pair<int, double>> mags;
    for (const auto& [k, v] : a0_list) mags.emplace_back(k, abs_upper(v));
    p.tail = TailBound::explicit_list(std::move(mags));
  }
  if (auto t = config.get("tail")) p.tail = parse_tail(*t);
  if (auto v = config.get("c_tail.l1")) p.c_tail.l1_upper = upper_decimal(*v);
  if (auto v = config.get("c_tail.weighted_l1")) p.c_tail.weighted_l1_upper = upper_decimal(*v);
  if (p.c_tail.l1_upper < 0.0 || p.c_tail.weighted_l1_upper < 0.0) {
    throw Error(ErrorCode::ParseError, "c_tail bounds must be >= 0");
  }
  if (auto v = config.get("period")) {
    const double T = Interval::from_decimal(*v).mid();
    if (!(T > 0.0)) throw Error(ErrorCode::ParseError, "period must be positive");
    p.asserted_period = T;
  }
  return p;
}

std::vector<std::string> builtin_names() { return {"example1", "example2", "example3"}; }

ProblemSpec builtin(std::string_view name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  if (name == "example3") return example3();
  throw Error(ErrorCode::InvalidArgument, "unknown problem '" + std::string(name) + "'");
}

ProblemSpec load_problem(const std::string& name_or_path) {
  for (const auto& n : builtin_names()) {
    if (n == name_or_path) return builtin(n);
  }
  if (!std::filesystem::exists(name_or_path)) {
    throw Error(ErrorCode::InvalidArgument, "'" + name_or_path + "' is neither a built-in problem nor a file");
  }
  return custom(KeyValues::load(name_or_path));
}

}  // namespace advec
