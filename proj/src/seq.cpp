#include "advec/seq.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace advec {

CoeffSeq::CoeffSeq(int offset, std::vector<ComplexInterval> coeffs) : offset_(offset), coeffs_(std::move(coeffs)) {}

CoeffSeq CoeffSeq::zeros(int K) {
  if (K < 0) throw Error(ErrorCode::InvalidArgument, "zeros needs K >= 0");
  return CoeffSeq(-K, std::vector<ComplexInterval>(static_cast<std::size_t>(2 * K + 1)));
}

CoeffSeq CoeffSeq::from_points(std::span<const std::complex<double>> values) {
  if (values.size() % 2 == 0) throw Error(ErrorCode::InvalidArgument, "point sequence needs odd length 2K+1");
  std::vector<ComplexInterval> c;
  c.reserve(values.size());
  for (const auto& v : values) c.emplace_back(v);
  return CoeffSeq(-static_cast<int>(values.size() / 2), std::move(c));
}

int CoeffSeq::extent() const noexcept {
  if (coeffs_.empty()) return 0;
  return std::max(std::abs(first()), std::abs(last()));
}

void CoeffSeq::set(int k, const ComplexInterval& value) {
  if (coeffs_.empty()) {
    offset_ = k;
    coeffs_.push_back(value);
    return;
  }
  if (k < offset_) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(offset_ - k), ComplexInterval{});
    offset_ = k;
  } else if (k > last()) {
    coeffs_.resize(static_cast<std::size_t>(k - offset_ + 1));
  }
  coeffs_[static_cast<std::size_t>(k - offset_)] = value;
}

bool CoeffSeq::is_hermitian() const noexcept {
  const int K = extent();
  for (int k = 0; k <= K; ++k) {
    if (!(*this)[-k].overlaps(conj((*this)[k]))) return false;
  }
  return true;
}

CoeffSeq CoeffSeq::restrict(int N) const {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "restrict needs N >= 0");
  const int lo = std::max(first(), -N);
  const int hi = std::min(last(), N);
  if (coeffs_.empty() || lo > hi) return {};
  return CoeffSeq(lo, std::vector<ComplexInterval>(coeffs_.begin() + (lo - offset_), coeffs_.begin() + (hi - offset_ + 1)));
}

CoeffSeq op_B(const CoeffSeq& a) {
  std::vector<ComplexInterval> out(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const int k = a.first() + static_cast<int>(j);
    out[j] = times_i(out[j]) * static_cast<double>(k);
  }
  return CoeffSeq(a.first(), std::move(out));
}

CoeffSeq conv(const CoeffSeq& a, const CoeffSeq& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<ComplexInterval> out(a.size() + b.size() - 1);
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  for (std::size_t i = 0; i < ac.size(); ++i) {
    for (std::size_t j = 0; j < bc.size(); ++j) out[i + j] += ac[i] * bc[j];
  }
  return CoeffSeq(a.first() + b.first(), std::move(out));
}

double l1_norm_upper(const CoeffSeq& a) noexcept {
  double s = 0.0;
  for (const auto& z : a.coeffs()) s = rounding::add_up(s, abs_upper(z));
  return s;
}

Interval l2_norm_enclosure(const CoeffSeq& a) {
  Interval s(0.0);
  for (const auto& z : a.coeffs()) s += norm(z);
  return sqrt_enclosure(s);
}

SeqSplit split(const CoeffSeq& c, int N, const TailBound& beyond_stored) {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "split needs N >= 0");
  SeqSplit s;
  s.head = c.restrict(N);
  double tail = beyond_stored.evaluate(c.extent());
  for (int k = c.first(); k <= c.last() && !c.empty(); ++k) {
    if (std::abs(k) > N) tail = rounding::add_up(tail, abs_upper(c[k]));
  }
  s.tail_l1_upper = tail;
  return s;
}

}  // namespace advec
