#pragma once

#include <optional>

#include "advec/interval.hpp"
#include "advec/seq.hpp"

namespace advec {

/// Bounds on the part of c beyond the stored coefficients:
/// l1_upper >= sum_{|m|>K} |c_m| and weighted_l1_upper >= sum_{|m|>K} |m| |c_m|.
struct CoeffTail {
  double l1_upper = 0.0;
  double weighted_l1_upper = 0.0;
};

/// Verified constants for the generator A a = -c * (B a) on l2.
///
/// The certificate is only issued when margin = |c_0| - 2 sum_{m!=0} |c_m| is
/// provably positive, in which case A generates a semigroup with
/// ||S(t)|| <= e^{omega t}, omega = ||B c||_1 / 2.
struct SemigroupCert {
  Interval omega;
  Interval margin;
  Interval kappa;              // sum_{m!=0} |c_m| / |c_0|
  Interval lambda0_threshold;  // ||B c||_1 / (1 - 2 kappa)
  Interval c0_abs;
  Interval off_center_l1;      // sum_{m!=0} |c_m|
  std::optional<double> period;
};

/// Throws CoefficientNotReal when c is not Hermitian and
/// DissipativityUnverified when margin.lo() <= 0.
SemigroupCert certify(const CoeffSeq& c, std::optional<double> period = std::nullopt, const CoeffTail& tail = {});

/// Certificate carrying only a growth rate; used to evaluate the error formula
/// with externally supplied constants.
SemigroupCert cert_from_omega(const Interval& omega, std::optional<double> period = std::nullopt);

/// Enclosure of e^{omega t}; its upper end bounds ||S(t)||.
Interval growth_factor(const SemigroupCert& cert, double t);

/// Largest n >= 0 with n T <= t, decided exactly.
long periods_elapsed(double t, double period);

/// e^{omega (t - n T)} with n = floor(t / T), valid when the solution is
/// T-periodic. Throws PeriodRequired without a period.
Interval growth_factor_periodic(const SemigroupCert& cert, double t);

/// Diagnostic bound ||C^{-1}|| <= 1 / (|c_0| - sum_{m!=0} |c_m|) for the
/// multiplication operator C a = c * a. Throws LemmaHypothesisFails unless
/// kappa < 1.
Interval c_inverse_bound(const SemigroupCert& cert, const CoeffSeq& c);

}  // namespace advec
