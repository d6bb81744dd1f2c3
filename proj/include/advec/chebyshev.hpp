#pragma once

#include <complex>
#include <span>
#include <vector>

namespace advec {

/// sum_l coeffs[l] * T_l(tau(t)) on [0, t_max], tau = 2t/t_max - 1.
struct ChebSeries {
  double t_max = 1.0;
  std::vector<std::complex<double>> coeffs;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

/// The n+1 Chebyshev-Lobatto points mapped to [0, t_max], ascending, with
/// exact endpoints. n = 0 yields the midpoint alone.
std::vector<double> cheb_points(int n, double t_max);

/// Degree-n interpolant of samples taken at cheb_points(n, t_max).
ChebSeries fit(std::span<const std::complex<double>> samples, double t_max);

/// Clenshaw evaluation; t must lie in [0, t_max].
std::complex<double> evaluate(const ChebSeries& s, double t);

/// d/dt of the series (degree drops by one, chain-rule factor 2/t_max included).
ChebSeries derivative(const ChebSeries& s);

/// Upward-rounded sum of |coeff_l|; dominates sup_t |s(t)| because |T_l| <= 1.
double abs_coeff_sum_upper(const ChebSeries& s);

/// Coefficients of d/dtau of a Chebyshev series on [-1, 1], by the backward
/// recurrence b_{l-1} = b_{l+1} + 2 l a_l. Works for any field-like T,
/// including the interval types. The result has max(1, n) entries.
template <class T>
std::vector<T> cheb_derivative_coeffs(std::span<const T> a) {
  const std::size_t n = a.empty() ? 0 : a.size() - 1;
  if (n == 0) return std::vector<T>(1, T{});
  std::vector<T> b(n + 1, T{});  // b[n] stays zero
  T next{};                      // b_{l+1}
  T curr{};                      // b_l
  for (std::size_t l = n; l >= 1; --l) {
    T prev = next + a[l] * static_cast<double>(2 * l);  // b_{l-1}
    b[l - 1] = prev;
    next = curr;
    curr = prev;
  }
  b[0] = b[0] * 0.5;
  b.pop_back();
  return b;
}

}  // namespace advec
