#include "advec/semigroup.hpp"

#include <cmath>
#include <sstream>

namespace advec {

namespace {

struct CoeffSums {
  Interval c0_abs;
  Interval off_center_l1;
  Interval weighted_l1;  // ||B c||_1
};

CoeffSums coefficient_sums(const CoeffSeq& c, const CoeffTail& tail) {
  CoeffSums s{abs(c[0]), Interval(0.0), Interval(0.0)};
  for (int k = c.first(); k <= c.last() && !c.empty(); ++k) {
    if (k == 0) continue;
    const Interval m = abs(c[k]);
    s.off_center_l1 += m;
    s.weighted_l1 += m * static_cast<double>(std::abs(k));
  }
  s.off_center_l1 += Interval(0.0, tail.l1_upper);
  s.weighted_l1 += Interval(0.0, tail.weighted_l1_upper);
  return s;
}

}  // namespace

SemigroupCert certify(const CoeffSeq& c, std::optional<double> period, const CoeffTail& tail) {
  if (!c.is_hermitian()) throw Error(ErrorCode::CoefficientNotReal, "c_{-m} and conj(c_m) do not overlap");
  if (period && !(*period > 0.0)) throw Error(ErrorCode::InvalidArgument, "period must be positive");
  const CoeffSums s = coefficient_sums(c, tail);

  SemigroupCert cert;
  cert.c0_abs = s.c0_abs;
  cert.off_center_l1 = s.off_center_l1;
  cert.omega = s.weighted_l1 * 0.5;
  cert.margin = s.c0_abs - s.off_center_l1 * 2.0;
  cert.period = period;
  if (!(cert.margin.lo() > 0.0)) {
    std::ostringstream msg;
    msg << "|c_0| - 2 sum |c_m| encloses " << cert.margin << ", not provably positive";
    throw Error(ErrorCode::DissipativityUnverified, msg.str());
  }
  cert.kappa = s.off_center_l1 / s.c0_abs;
  // 1 - 2 kappa = margin / |c_0|, which is provably positive here.
  cert.lambda0_threshold = s.weighted_l1 * s.c0_abs / cert.margin;
  return cert;
}

SemigroupCert cert_from_omega(const Interval& omega, std::optional<double> period) {
  if (omega.lo() < 0.0) throw Error(ErrorCode::InvalidArgument, "omega must be >= 0");
  SemigroupCert cert;
  cert.omega = omega;
  cert.period = period;
  return cert;
}

Interval growth_factor(const SemigroupCert& cert, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::DomainError, "growth factor needs t >= 0");
  return exp_enclosure(cert.omega * t);
}

long periods_elapsed(double t, double period) {
  if (!(t >= 0.0) || !(period > 0.0)) throw Error(ErrorCode::DomainError, "need t >= 0 and period > 0");
  double n = std::floor(t / period);
  // fma yields the correctly rounded t - nT, whose sign is exact.
  while (n > 0.0 && std::fma(-n, period, t) < 0.0) n -= 1.0;
  while (std::fma(-(n + 1.0), period, t) >= 0.0) n += 1.0;
  return static_cast<long>(n);
}

namespace {

double require_period(const SemigroupCert& cert) {
  if (!cert.period) throw Error(ErrorCode::PeriodRequired, "no period asserted for this certificate");
  return *cert.period;
}

}  // namespace

Interval growth_factor_periodic(const SemigroupCert& cert, double t) {
  const double T = require_period(cert);
  const long n = periods_elapsed(t, T);
  const Interval elapsed = Interval(t) - Interval(static_cast<double>(n)) * T;
  const Interval remainder(std::max(0.0, elapsed.lo()), std::max(0.0, elapsed.hi()));
  return exp_enclosure(cert.omega * remainder);
}

Interval c_inverse_bound(const SemigroupCert& cert, const CoeffSeq& c) {
  const CoeffSums s = coefficient_sums(c, {});
  const Interval gap = s.c0_abs - s.off_center_l1;
  if (!(gap.lo() > 0.0) || (cert.kappa.hi() >= 1.0 && cert.c0_abs.hi() > 0.0)) {
    throw Error(ErrorCode::LemmaHypothesisFails, "|c_0| - sum_{m!=0} |c_m| is not provably positive");
  }
  return Interval(1.0) / gap;
}

}  // namespace advec
