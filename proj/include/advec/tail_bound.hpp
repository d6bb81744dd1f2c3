#pragma once

#include <utility>
#include <vector>

#include "advec/interval.hpp"

namespace advec {

/// Rigorous upper bound of the norm of a sequence's coefficients beyond |k| > N.
///
/// Kinds:
///  - GaussianErfc: prefactor * erfc(N / (width * sqrt(2)))^{1/2}, the l2 tail of
///    coefficients decaying like e^{-k^2 / (2 width^2)}.
///  - Geometric: prefactor * ratio^N.
///  - ExplicitList: l2 norm of the listed magnitudes whose index exceeds N.
///    An empty list means the sequence is fully stored, so the tail is zero.
///  - CustomUpper: a user-supplied constant, valid for every N.
///
/// All kinds are non-negative and non-increasing in N.
class TailBound {
 public:
  enum class Kind { GaussianErfc, Geometric, ExplicitList, CustomUpper };

  TailBound() = default;

  static TailBound gaussian_erfc(const Interval& prefactor, const Interval& width);
  static TailBound geometric(const Interval& prefactor, const Interval& ratio);
  /// `magnitudes` holds (k, upper bound of |a_k|) pairs.
  static TailBound explicit_list(std::vector<std::pair<int, double>> magnitudes = {});
  static TailBound custom_upper(double value);

  Kind kind() const noexcept { return kind_; }
  const Interval& prefactor() const noexcept { return prefactor_; }
  const Interval& parameter() const noexcept { return parameter_; }
  const std::vector<std::pair<int, double>>& magnitudes() const noexcept { return magnitudes_; }

  /// Upward-rounded bound for truncation index N >= 0.
  double evaluate(int N) const;

 private:
  Kind kind_ = Kind::ExplicitList;
  Interval prefactor_{0.0};
  Interval parameter_{0.0};
  std::vector<std::pair<int, double>> magnitudes_;
};

}  // namespace advec
