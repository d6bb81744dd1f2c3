#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "advec/galerkin.hpp"
#include "advec/semigroup.hpp"
#include "advec/seq.hpp"
#include "advec/tail_bound.hpp"

namespace advec {

/// Exact initial Fourier coefficients a_k(0) for |k| <= N, indexed k + N.
using A0Provider = std::function<std::vector<ComplexInterval>(int N)>;

/// Upper bound of ||a(0) - a~(0)||_2: interval l2 distance over |k| <= N plus
/// the tail bound evaluated at N.
double initial_error_bound(std::span<const ComplexInterval> a0_exact, const ApproxSolution& approx,
                           const TailBound& tail);
double initial_error_bound(const A0Provider& a0_exact, const ApproxSolution& approx, const TailBound& tail);

/// The three l2-of-l1 blocks of the residual estimate and their sum.
struct ResidualBound {
  double head = 0.0;   // |k| <= N: derivative plus truncated convolution
  double spill = 0.0;  // N < |k|: convolution of the stored c with the modes
  double tail = 0.0;   // part of c beyond split_N, through its l1 norm
  double total = 0.0;
};

/// Upper bound of sup_t ||d/dt a~ - A a~||_2 over [0, t_max]. c is split at
/// split_N (clamped to c.extent()); c_beyond_stored bounds sum_{|m| > c.extent()} |c_m|.
/// Throws CoefficientMismatch unless c equals approx.c_used.
ResidualBound residual_bound_blocks(const ApproxSolution& approx, const CoeffSeq& c, int split_N,
                                    const TailBound& c_beyond_stored = TailBound::explicit_list());
double residual_bound(const ApproxSolution& approx, const CoeffSeq& c, int split_N,
                      const TailBound& c_beyond_stored = TailBound::explicit_list());

/// Upper end of e^{omega t} z0 + (e^{omega t} - 1)/omega * r.
double total_error_bound(const Interval& omega, double z0, double r, double t_max);
double total_error_bound(const SemigroupCert& cert, double z0, double r, double t_max);

/// Variant for T-periodic solutions, n = floor(t / T):
/// e^{omega (t - nT)} z0 + e^{-omega nT} (e^{omega t} - 1)/omega * r.
/// Throws PeriodRequired when cert.period is unset.
double total_error_bound_periodic(const SemigroupCert& cert, double z0, double r, double t);

struct ProblemSpec {
  std::string name;
  CoeffSeq c;
  A0Provider a0_provider;
  TailBound tail;
  /// Coefficients of c beyond the stored ones; zero for trigonometric polynomials.
  CoeffTail c_tail;
  std::optional<double> asserted_period;
};

struct VerificationReport {
  std::string problem;
  int N = 0;
  int n = 0;
  double t_max = 0.0;
  double tol = 0.0;

  bool verified = false;
  std::string failure_stage;  // certify, approximate, initial_error, residual, total
  std::string failure_code;
  std::string failure_message;

  Interval omega;
  double initial_error = 0.0;
  double residual = 0.0;
  double total_error = 0.0;
  std::optional<double> period;
  std::optional<double> periodic_total_error;

  double approx_seconds = 0.0;
  double exec_seconds = 0.0;

  /// exec_seconds / approx_seconds.
  double ratio() const noexcept { return approx_seconds > 0.0 ? exec_seconds / approx_seconds : 0.0; }

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// n_auto selects the Chebyshev degree adaptively.
inline constexpr int n_auto = 0;

/// Full pipeline: certify, build_solution, initial_error_bound, residual_bound
/// and total_error_bound (plus the periodic form when a period is known).
/// Failures are reported, not thrown. exec_seconds covers the whole run and
/// approx_seconds the approximate solve alone.
VerificationReport verify(const ProblemSpec& problem, int N, int n, double t_max, double tol = 1e-12,
                          std::optional<double> period = std::nullopt);

}  // namespace advec
