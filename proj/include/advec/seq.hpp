#pragma once

// Finite-support bi-infinite complex sequences (a_k)_{k in Z} with interval
// coefficients, and the operator algebra acting on them: the Fourier-side
// derivative B, the Cauchy product, l1/l2 norms and head/tail splitting.

#include <complex>
#include <span>
#include <vector>

#include "advec/interval.hpp"
#include "advec/tail_bound.hpp"

namespace advec {

/// Dense storage of a_k for k in [first(), last()]; every other index is zero.
class CoeffSeq {
 public:
  CoeffSeq() = default;
  CoeffSeq(int offset, std::vector<ComplexInterval> coeffs);

  /// All-zero sequence stored over [-K, K].
  static CoeffSeq zeros(int K);
  /// Point sequence over [-K, K]; values.size() must be 2K+1.
  static CoeffSeq from_points(std::span<const std::complex<double>> values);

  int first() const noexcept { return offset_; }
  int last() const noexcept { return offset_ + static_cast<int>(coeffs_.size()) - 1; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool empty() const noexcept { return coeffs_.empty(); }
  /// Largest |k| with a stored coefficient (0 for an empty sequence).
  int extent() const noexcept;

  ComplexInterval operator[](int k) const noexcept {
    if (k < offset_ || k > last()) return {};
    return coeffs_[static_cast<std::size_t>(k - offset_)];
  }
  void set(int k, const ComplexInterval& value);

  std::span<const ComplexInterval> coeffs() const noexcept { return coeffs_; }

  /// c_{-k} and conj(c_k) overlap for every k, i.e. the sequence may be the
  /// Fourier series of a real-valued function.
  bool is_hermitian() const noexcept;

  /// Restriction to [-N, N].
  CoeffSeq restrict(int N) const;

  friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;

 private:
  int offset_ = 0;
  std::vector<ComplexInterval> coeffs_;
};

/// (B a)_k = i k a_k.
CoeffSeq op_B(const CoeffSeq& a);

/// Cauchy product (a * b)_k = sum_m a_{k-m} b_m; support is the Minkowski sum.
CoeffSeq conv(const CoeffSeq& a, const CoeffSeq& b);

double l1_norm_upper(const CoeffSeq& a) noexcept;
Interval l2_norm_enclosure(const CoeffSeq& a);

/// c = c^(N) + c^(inf): the head keeps |k| <= N, the tail is only known through
/// an upper bound of its l1 norm.
struct SeqSplit {
  CoeffSeq head;
  double tail_l1_upper = 0.0;
};

/// `beyond_stored` bounds sum_{|k| > c.extent()} |c_k|, i.e. the part of c that
/// was never stored. It is evaluated at c.extent() and added to the stored
/// coefficients that fall outside [-N, N].
SeqSplit split(const CoeffSeq& c, int N, const TailBound& beyond_stored = TailBound::explicit_list());

}  // namespace advec
