#pragma once

// Truncated Fourier-Galerkin system
//   d/dt a_k + sum_{|m|<=N} c_{k-m} i m a_m = 0,   |k| <= N,
// integrated with an adaptive Dormand-Prince 5(4) pair and resampled as one
// Chebyshev series in time per Fourier mode. Everything here is plain
// floating point; rigor is recovered afterwards by the verifier.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "advec/chebyshev.hpp"
#include "advec/seq.hpp"

namespace advec {

using cplx = std::complex<double>;

/// Right-hand side of the truncated system, using midpoints of c.
class GalerkinSystem {
 public:
  GalerkinSystem(const CoeffSeq& c, int N);

  int N() const noexcept { return N_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(2 * N_ + 1); }

  /// out_k = -(c * (B a))_k for |k| <= N; a and out are indexed k + N.
  void operator()(std::span<const cplx> a, std::span<cplx> out) const;

 private:
  int N_;
  int c_first_;
  std::vector<cplx> c_mid_;
  mutable std::vector<cplx> scratch_;
};

/// Allocating convenience form of GalerkinSystem.
std::vector<cplx> rhs(std::span<const cplx> a, const CoeffSeq& c, int N);

struct IntegratorOptions {
  /// Relative and absolute tolerance of the local error test.
  double tol = 1e-12;
  /// When positive, take constant steps of this size without error control.
  double fixed_step = 0.0;
  std::size_t max_steps = 100'000'000;
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

/// Fourth-order continuous extension of one accepted step on [t0, t0 + h].
class StepInterpolant {
 public:
  double t0() const noexcept { return t0_; }
  double t1() const noexcept { return t0_ + h_; }
  double h() const noexcept { return h_; }
  /// Evaluates at t in [t0, t1] (clamped) into out.
  void evaluate(double t, std::span<cplx> out) const;

 private:
  friend class DormandPrince45;
  double t0_ = 0.0;
  double h_ = 0.0;
  std::vector<cplx> r1_, r2_, r3_, r4_, r5_;
};

using RhsFunction = std::function<void(std::span<const cplx>, std::span<cplx>)>;

/// Dormand-Prince 5(4) with Hairer's PI step-size control and dense output.
class DormandPrince45 {
 public:
  explicit DormandPrince45(IntegratorOptions opts = {}) : opts_(opts) {}

  /// Integrates y' = f(y) from t = 0 with y(0) = y0 up to t_end, handing
  /// each accepted step's interpolant to on_step. Returns the final state.
  std::vector<cplx> run(const RhsFunction& f, std::span<const cplx> y0, double t_end,
                        const std::function<void(const StepInterpolant&)>& on_step, IntegrationStats* stats = nullptr) const;

 private:
  double initial_step(const RhsFunction& f, std::span<const cplx> y0, std::span<const cplx> f0, double t_end) const;

  IntegratorOptions opts_;
};

/// Piecewise dense output of a complete integration.
class DenseTrajectory {
 public:
  double t_end() const noexcept { return steps_.empty() ? 0.0 : steps_.back().t1(); }
  std::size_t dimension() const noexcept { return dimension_; }
  const IntegrationStats& stats() const noexcept { return stats_; }
  std::size_t step_count() const noexcept { return steps_.size(); }
  std::vector<cplx> evaluate(double t) const;

 private:
  friend DenseTrajectory integrate(const CoeffSeq&, std::span<const cplx>, int, double, const IntegratorOptions&);
  std::size_t dimension_ = 0;
  std::vector<cplx> initial_;
  std::vector<StepInterpolant> steps_;
  IntegrationStats stats_;
};

/// Full dense trajectory. Keeps every step, so meant for moderate spans; use
/// sample_trajectory when only a fixed set of times is needed.
DenseTrajectory integrate(const CoeffSeq& c, std::span<const cplx> a0, int N, double t_max,
                          const IntegratorOptions& opts = {});

/// States at the ascending query times in [0, t_max], one vector per time.
std::vector<std::vector<cplx>> sample_trajectory(const CoeffSeq& c, std::span<const cplx> a0, int N, double t_max,
                                                 std::span<const double> times, const IntegratorOptions& opts = {},
                                                 IntegrationStats* stats = nullptr);

/// Approximate solution: one Chebyshev series per Fourier mode |k| <= N.
struct ApproxSolution {
  int N = 0;
  int n = 0;
  double t_max = 1.0;
  double tol = 0.0;
  std::vector<ChebSeries> modes;  // index k + N
  CoeffSeq c_used;
  IntegrationStats stats;

  const ChebSeries& mode(int k) const { return modes.at(static_cast<std::size_t>(k + N)); }
  /// All modes at time t.
  std::vector<cplx> evaluate(double t) const;
};

/// Integrates, samples at cheb_points(n, t_max) and fits every mode.
ApproxSolution build_solution(const CoeffSeq& c, std::span<const cplx> a0, int N, int n, double t_max,
                              const IntegratorOptions& opts = {});

/// build_solution with n doubled from 8 until the fit round-trip error plus the
/// largest trailing coefficient drops below 1e-12 (capped at max_n).
ApproxSolution build_solution_auto(const CoeffSeq& c, std::span<const cplx> a0, int N, double t_max,
                                   const IntegratorOptions& opts = {}, int max_n = 2048);

}  // namespace advec
