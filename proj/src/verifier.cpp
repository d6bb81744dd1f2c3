#include "advec/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>

namespace advec {

namespace {

using rounding::add_up;
using rounding::mul_up;

// Upward sum of squares, then square root.
double l2_upper(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = add_up(s, mul_up(x, x));
  return rounding::sqrt_up(s);
}

ComplexInterval value_at_start(const ChebSeries& s) {
  // tau = -1 at t = 0, where T_l = (-1)^l.
  ComplexInterval acc;
  for (std::size_t l = 0; l < s.coeffs.size(); ++l) {
    const ComplexInterval a(s.coeffs[l]);
    acc += (l % 2 == 0) ? a : -a;
  }
  return acc;
}

}  // namespace

double initial_error_bound(std::span<const ComplexInterval> a0_exact, const ApproxSolution& approx,
                           const TailBound& tail) {
  if (a0_exact.size() != approx.modes.size()) {
    throw Error(ErrorCode::InvalidArgument, "initial coefficients do not match the number of modes");
  }
  Interval sum(0.0);
  for (std::size_t i = 0; i < a0_exact.size(); ++i) sum += norm(a0_exact[i] - value_at_start(approx.modes[i]));
  return add_up(rounding::sqrt_up(sum.hi()), tail.evaluate(approx.N));
}

double initial_error_bound(const A0Provider& a0_exact, const ApproxSolution& approx, const TailBound& tail) {
  const auto a0 = a0_exact(approx.N);
  return initial_error_bound(a0, approx, tail);
}

ResidualBound residual_bound_blocks(const ApproxSolution& approx, const CoeffSeq& c, int split_N,
                                    const TailBound& c_beyond_stored) {
  if (!(c == approx.c_used)) throw Error(ErrorCode::CoefficientMismatch, "c differs from the one used to build the approximation");
  if (split_N < 0) throw Error(ErrorCode::InvalidArgument, "split_N must be >= 0");
  const int N = approx.N;
  const std::size_t dim = approx.modes.size();
  const SeqSplit parts = split(c, std::min(split_N, c.extent()), c_beyond_stored);
  const CoeffSeq& head = parts.head;

  std::size_t L = 0;
  for (const auto& m : approx.modes) L = std::max(L, m.coeffs.size());

  ResidualBound out;
  if (L == 0) return out;

  const Interval chain = Interval(2.0) / Interval(approx.t_max);
  const int j_first = head.empty() ? 0 : head.first();
  const int j_last = head.empty() ? -1 : head.last();
  const int k_lo = -N + std::min(0, j_first);
  const int k_hi = N + std::max(0, j_last);
  const std::size_t rows = static_cast<std::size_t>(k_hi - k_lo + 1);

  // Time coefficients as a dense [l][m] table; modes of lower degree are zero-padded.
  std::vector<cplx> coef(L * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& cs = approx.modes[i].coeffs;
    for (std::size_t l = 0; l < cs.size(); ++l) coef[l * dim + i] = cs[l];
  }

  // Derivative coefficients of every mode, in interval arithmetic, laid out [l][k].
  std::vector<ComplexInterval> der(L * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<ComplexInterval> lifted;
    lifted.reserve(approx.modes[i].coeffs.size());
    for (const auto& a : approx.modes[i].coeffs) lifted.emplace_back(a);
    const auto d = cheb_derivative_coeffs<ComplexInterval>(lifted);
    for (std::size_t l = 0; l < d.size() && l < L; ++l) der[l * dim + i] = d[l] * chain;
  }

  // The convolution sum_j c_j i m a~_{m,l} runs in plain floating point on the
  // midpoints of c. Its rounding error is bounded a priori: every exact term
  // enters the computed sum with a factor (1 + theta), |theta| <= gamma_{J+3},
  // so |error| <= gamma_{J+3} * A with A the sum of the terms' magnitudes.
  // The radii of c contribute rho_j |m| |a~_{m,l}| on top.
  const std::size_t J = static_cast<std::size_t>(j_last - j_first + 1);
  std::vector<cplx> c_mid;
  std::vector<double> c_mag;  // |Re| + |Im| of the midpoint
  std::vector<double> c_rad;  // upper bound of |c_j - mid|
  for (int j = j_first; j <= j_last; ++j) {
    const ComplexInterval cj = head[j];
    const cplx m = cj.mid();
    c_mid.push_back(m);
    c_mag.push_back(std::abs(m.real()) + std::abs(m.imag()));
    c_rad.push_back(abs_upper(cj - ComplexInterval(m)));
  }
  constexpr double kUnit = 0x1p-53;
  // gamma_{J+3} <= 1.01 (J+3) u and the computed A may be short of the exact
  // one by a factor 1.01; 2 (J+3) u covers both. Same factor 2 for R.
  const double err_factor = 2.0 * static_cast<double>(J + 3) * kUnit;
  // Absolute underflow contributions of all operations of one entry.
  constexpr double kUnderflowSlack = 0x1p-1000;

  std::vector<double> row_l1(rows, 0.0);
  std::vector<double> weighted_l1(dim, 0.0);  // |k| sum_l |a~_{k,l}|
  std::vector<cplx> sum(rows);
  std::vector<double> mag(rows);
  std::vector<double> rad(rows);
  std::vector<cplx> v(dim);     // i m a~_{m,l}
  std::vector<double> w(dim);   // |m| (|Re a~| + |Im a~|)
  const std::size_t inner_offset = static_cast<std::size_t>(-N - k_lo);
  for (std::size_t l = 0; l < L; ++l) {
    std::fill(sum.begin(), sum.end(), cplx{});
    std::fill(mag.begin(), mag.end(), 0.0);
    std::fill(rad.begin(), rad.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      const ComplexInterval& d = der[l * dim + i];
      const cplx dm = d.mid();
      sum[inner_offset + i] = dm;
      mag[inner_offset + i] = std::abs(dm.real()) + std::abs(dm.imag());
      rad[inner_offset + i] = abs_upper(d - ComplexInterval(dm));
    }
    const cplx* a = coef.data() + l * dim;
    for (std::size_t i = 0; i < dim; ++i) {
      const double m = static_cast<double>(static_cast<int>(i) - N);
      v[i] = {-m * a[i].imag(), m * a[i].real()};
      w[i] = std::abs(m) * (std::abs(a[i].real()) + std::abs(a[i].imag()));
    }
    for (std::size_t jj = 0; jj < J; ++jj) {
      const double cr = c_mid[jj].real();
      const double ci = c_mid[jj].imag();
      const double cm = c_mag[jj];
      const double cd = c_rad[jj];
      // Row of k = m + j at m = -N.
      const std::size_t off = static_cast<std::size_t>(j_first + static_cast<int>(jj) - N - k_lo);
      cplx* so = sum.data() + off;
      double* mo = mag.data() + off;
      double* ro = rad.data() + off;
      for (std::size_t i = 0; i < dim; ++i) {
        so[i] = {so[i].real() + (cr * v[i].real() - ci * v[i].imag()), so[i].imag() + (cr * v[i].imag() + ci * v[i].real())};
        mo[i] += cm * w[i];
        ro[i] += cd * w[i];
      }
    }
    for (std::size_t r = 0; r < rows; ++r) {
      double bound = abs_upper(ComplexInterval(sum[r]));
      bound = add_up(bound, mul_up(err_factor, mag[r]));
      bound = add_up(bound, mul_up(2.0, rad[r]));
      bound = add_up(bound, kUnderflowSlack);
      row_l1[r] = add_up(row_l1[r], bound);
    }
  }
  for (double x : row_l1) {
    if (!std::isfinite(x)) {
      out.head = out.spill = out.tail = out.total = rounding::kInf;
      return out;
    }
  }
  if (parts.tail_l1_upper > 0.0) {
    for (int k = -N; k <= N; ++k) {
      const std::size_t i = static_cast<std::size_t>(k + N);
      double s = 0.0;
      for (const auto& a : approx.modes[i].coeffs) s = add_up(s, abs_upper(ComplexInterval(a)));
      weighted_l1[i] = mul_up(s, static_cast<double>(std::abs(k)));
    }
  }

  std::vector<double> inner_rows;
  std::vector<double> outer_rows;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double v = row_l1[static_cast<std::size_t>(k - k_lo)];
    (k >= -N && k <= N ? inner_rows : outer_rows).push_back(v);
  }
  out.head = l2_upper(inner_rows);
  out.spill = l2_upper(outer_rows);
  out.tail = parts.tail_l1_upper > 0.0 ? mul_up(parts.tail_l1_upper, l2_upper(weighted_l1)) : 0.0;
  out.total = add_up(add_up(out.head, out.spill), out.tail);
  return out;
}

double residual_bound(const ApproxSolution& approx, const CoeffSeq& c, int split_N, const TailBound& c_beyond_stored) {
  return residual_bound_blocks(approx, c, split_N, c_beyond_stored).total;
}

namespace {

void check_nonnegative(double z0, double r) {
  if (!(z0 >= 0.0) || !(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "error bounds must be >= 0");
}

}  // namespace

double total_error_bound(const Interval& omega, double z0, double r, double t_max) {
  check_nonnegative(z0, r);
  const Interval growth = exp_enclosure(omega * t_max);
  return (growth * z0 + expm1_over(omega, t_max) * r).hi();
}

double total_error_bound(const SemigroupCert& cert, double z0, double r, double t_max) {
  return total_error_bound(cert.omega, z0, r, t_max);
}

double total_error_bound_periodic(const SemigroupCert& cert, double z0, double r, double t) {
  check_nonnegative(z0, r);
  if (!cert.period) throw Error(ErrorCode::PeriodRequired, "no period asserted for this certificate");
  const double T = *cert.period;
  const long n = periods_elapsed(t, T);
  const Interval nT = Interval(static_cast<double>(n)) * T;
  const Interval decay = exp_enclosure(-(cert.omega * nT));
  return (growth_factor_periodic(cert, t) * z0 + decay * expm1_over(cert.omega, t) * r).hi();
}

VerificationReport verify(const ProblemSpec& problem, int N, int n, double t_max, double tol,
                          std::optional<double> period) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  VerificationReport rep;
  rep.problem = problem.name;
  rep.N = N;
  rep.n = n;
  rep.t_max = t_max;
  rep.tol = tol;
  rep.period = period ? period : problem.asserted_period;

  std::string stage = "certify";
  try {
    if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 0");
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
    if (!(t_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
    const SemigroupCert cert = certify(problem.c, rep.period, problem.c_tail);
    rep.omega = cert.omega;

    stage = "approximate";
    const auto app_start = clock::now();
    const std::vector<ComplexInterval> a0 = problem.a0_provider(N);
    std::vector<cplx> a0_mid;
    a0_mid.reserve(a0.size());
    for (const auto& a : a0) a0_mid.push_back(a.mid());
    IntegratorOptions opts;
    opts.tol = tol;
    const ApproxSolution approx = n == n_auto ? build_solution_auto(problem.c, a0_mid, N, t_max, opts)
                                              : build_solution(problem.c, a0_mid, N, n, t_max, opts);
    rep.approx_seconds = std::chrono::duration<double>(clock::now() - app_start).count();
    rep.n = approx.n;

    stage = "initial_error";
    rep.initial_error = initial_error_bound(a0, approx, problem.tail);

    stage = "residual";
    const TailBound c_beyond = problem.c_tail.l1_upper > 0.0 ? TailBound::custom_upper(problem.c_tail.l1_upper)
                                                             : TailBound::explicit_list();
    rep.residual = residual_bound(approx, problem.c, N, c_beyond);

    stage = "total";
    rep.total_error = total_error_bound(cert, rep.initial_error, rep.residual, t_max);
    if (cert.period) rep.periodic_total_error = total_error_bound_periodic(cert, rep.initial_error, rep.residual, t_max);
    rep.verified = std::isfinite(rep.total_error);
    if (!rep.verified) {
      rep.failure_stage = stage;
      rep.failure_code = std::string(to_string(ErrorCode::ExpOverflow));
      rep.failure_message = "total error bound is not finite";
    }
  } catch (const Error& e) {
    rep.verified = false;
    rep.failure_stage = stage;
    rep.failure_code = std::string(e.name());
    rep.failure_message = e.what();
  } catch (const std::exception& e) {
    rep.verified = false;
    rep.failure_stage = stage;
    rep.failure_code = "Internal";
    rep.failure_message = e.what();
  }
  rep.exec_seconds = std::chrono::duration<double>(clock::now() - start).count();
  return rep;
}

}  // namespace advec
