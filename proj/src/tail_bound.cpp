#include "advec/tail_bound.hpp"

#include <cstdlib>
#include <string>

namespace advec {

TailBound TailBound::gaussian_erfc(const Interval& prefactor, const Interval& width) {
  if (prefactor.lo() < 0.0 || width.lo() <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "gaussian tail needs prefactor >= 0 and width > 0");
  }
  TailBound t;
  t.kind_ = Kind::GaussianErfc;
  t.prefactor_ = prefactor;
  t.parameter_ = width;
  return t;
}

TailBound TailBound::geometric(const Interval& prefactor, const Interval& ratio) {
  if (prefactor.lo() < 0.0 || ratio.lo() < 0.0 || ratio.hi() > 1.0) {
    throw Error(ErrorCode::InvalidArgument, "geometric tail needs prefactor >= 0 and 0 <= ratio <= 1");
  }
  TailBound t;
  t.kind_ = Kind::Geometric;
  t.prefactor_ = prefactor;
  t.parameter_ = ratio;
  return t;
}

TailBound TailBound::explicit_list(std::vector<std::pair<int, double>> magnitudes) {
  for (const auto& [k, m] : magnitudes) {
    if (!(m >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative magnitude at k=" + std::to_string(k));
  }
  TailBound t;
  t.kind_ = Kind::ExplicitList;
  t.magnitudes_ = std::move(magnitudes);
  return t;
}

TailBound TailBound::custom_upper(double value) {
  if (!(value >= 0.0)) throw Error(ErrorCode::InvalidArgument, "custom tail bound must be >= 0");
  TailBound t;
  t.kind_ = Kind::CustomUpper;
  t.prefactor_ = Interval(value);
  return t;
}

double TailBound::evaluate(int N) const {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "tail bound needs N >= 0");
  switch (kind_) {
    case Kind::GaussianErfc: {
      // erfc is decreasing, so the smallest admissible argument bounds it above.
      const Interval denom = parameter_ * sqrt_enclosure(Interval(2.0));
      const double arg = rounding::div_down(static_cast<double>(N), denom.hi());
      const double e = erfc_upper(std::max(0.0, arg));
      return rounding::mul_up(prefactor_.hi(), rounding::sqrt_up(e));
    }
    case Kind::Geometric:
      return (prefactor_ * pow(parameter_, static_cast<unsigned>(N))).hi();
    case Kind::ExplicitList: {
      double sum = 0.0;
      for (const auto& [k, m] : magnitudes_) {
        if (std::abs(k) > N) sum = rounding::add_up(sum, rounding::mul_up(m, m));
      }
      return rounding::sqrt_up(sum);
    }
    case Kind::CustomUpper:
      return prefactor_.hi();
  }
  return 0.0;
}

}  // namespace advec
