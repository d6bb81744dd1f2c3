#include "advec/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "advec/error.hpp"
#include "advec/interval.hpp"

namespace advec {

std::vector<double> cheb_points(int n, double t_max) {
  if (!(t_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative Chebyshev degree");
  if (n == 0) return {0.5 * t_max};
  std::vector<double> t(static_cast<std::size_t>(n) + 1);
  const double half = 0.5 * t_max;
  for (int j = 0; j <= n; ++j) {
    // Evaluate from the nearer endpoint so both ends come out exact.
    if (2 * j <= n) {
      t[j] = half * (1.0 - std::cos(std::numbers::pi * j / n));
    } else {
      t[j] = t_max - half * (1.0 - std::cos(std::numbers::pi * (n - j) / n));
    }
  }
  return t;
}

ChebSeries fit(std::span<const std::complex<double>> samples, double t_max) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "fit needs at least one sample");
  if (!(t_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
  const std::size_t n = samples.size() - 1;
  ChebSeries s{t_max, std::vector<std::complex<double>>(n + 1)};
  if (n == 0) {
    s.coeffs[0] = samples[0];
    return s;
  }
  // Sample j sits at tau_j = -cos(j pi / n), so T_l(tau_j) = (-1)^l cos(l j pi / n).
  std::vector<double> cos_table(2 * n);
  for (std::size_t m = 0; m < 2 * n; ++m) cos_table[m] = std::cos(std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
  const double scale = 2.0 / static_cast<double>(n);
  for (std::size_t l = 0; l <= n; ++l) {
    std::complex<double> acc = 0.5 * (samples[0] + samples[n] * cos_table[(l * n) % (2 * n)]);
    for (std::size_t j = 1; j < n; ++j) acc += samples[j] * cos_table[(l * j) % (2 * n)];
    acc *= scale;
    if (l == 0 || l == n) acc *= 0.5;
    s.coeffs[l] = (l % 2 == 1) ? -acc : acc;
  }
  return s;
}

std::complex<double> evaluate(const ChebSeries& s, double t) {
  if (!(t >= 0.0 && t <= s.t_max)) {
    throw Error(ErrorCode::DomainError, "evaluation point " + std::to_string(t) + " outside [0, t_max]");
  }
  const double tau = 2.0 * t / s.t_max - 1.0;
  std::complex<double> b1 = 0.0;
  std::complex<double> b2 = 0.0;
  for (std::size_t l = s.coeffs.size(); l-- > 1;) {
    const std::complex<double> b0 = s.coeffs[l] + 2.0 * tau * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  if (s.coeffs.empty()) return 0.0;
  return s.coeffs[0] + tau * b1 - b2;
}

ChebSeries derivative(const ChebSeries& s) {
  ChebSeries d{s.t_max, cheb_derivative_coeffs<std::complex<double>>(s.coeffs)};
  const double chain = 2.0 / s.t_max;
  for (auto& c : d.coeffs) c *= chain;
  return d;
}

double abs_coeff_sum_upper(const ChebSeries& s) {
  double sum = 0.0;
  for (const auto& c : s.coeffs) sum = rounding::add_up(sum, abs_upper(ComplexInterval(c)));
  return sum;
}

}  // namespace advec
