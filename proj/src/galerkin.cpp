#include "advec/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "advec/error.hpp"

namespace advec {

GalerkinSystem::GalerkinSystem(const CoeffSeq& c, int N) : N_(N), c_first_(c.first()) {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "truncation N must be >= 0");
  c_mid_.reserve(c.size());
  for (const auto& z : c.coeffs()) c_mid_.push_back(z.mid());
  scratch_.resize(dimension());
}

void GalerkinSystem::operator()(std::span<const cplx> a, std::span<cplx> out) const {
  const std::size_t dim = dimension();
  for (int m = -N_; m <= N_; ++m) {
    const cplx v = a[m + N_];
    scratch_[m + N_] = cplx(-m * v.imag(), m * v.real());  // i m a_m
  }
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(dim), cplx(0.0));
  for (std::size_t jj = 0; jj < c_mid_.size(); ++jj) {
    const int j = c_first_ + static_cast<int>(jj);
    const cplx cj = c_mid_[jj];
    if (cj == cplx(0.0)) continue;
    // k - j = m with |k|, |m| <= N
    const int k_lo = std::max(-N_, j - N_);
    const int k_hi = std::min(N_, j + N_);
    for (int k = k_lo; k <= k_hi; ++k) out[k + N_] -= cj * scratch_[k - j + N_];
  }
}

std::vector<cplx> rhs(std::span<const cplx> a, const CoeffSeq& c, int N) {
  GalerkinSystem sys(c, N);
  if (a.size() != sys.dimension()) throw Error(ErrorCode::InvalidArgument, "state length must be 2N+1");
  std::vector<cplx> out(sys.dimension());
  sys(a, out);
  return out;
}

void StepInterpolant::evaluate(double t, std::span<cplx> out) const {
  const double theta = h_ > 0.0 ? std::clamp((t - t0_) / h_, 0.0, 1.0) : 0.0;
  const double s1 = 1.0 - theta;
  for (std::size_t i = 0; i < r1_.size(); ++i) {
    out[i] = r1_[i] + theta * (r2_[i] + s1 * (r3_[i] + theta * (r4_[i] + s1 * r5_[i])));
  }
}

namespace {

// Dormand-Prince 5(4) tableau. The system is autonomous, so the nodes c_i are
// never needed.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
// Difference between the fifth- and fourth-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension (Hairer's DOPRI5).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// Step-size controller constants.
constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kMaxShrink = 5.0;   // h_new >= h / 5
constexpr double kMaxGrowth = 10.0;  // h_new <= 10 h

// Returns fl(a + b) and stores the rounding error in err.
double two_sum(double a, double b, double& err) {
  const double s = a + b;
  const double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

double scaled_rms(std::span<const cplx> v, std::span<const cplx> y0, std::span<const cplx> y1, double tol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double skr = tol + tol * std::max(std::abs(y0[i].real()), std::abs(y1[i].real()));
    const double ski = tol + tol * std::max(std::abs(y0[i].imag()), std::abs(y1[i].imag()));
    const double qr = v[i].real() / skr;
    const double qi = v[i].imag() / ski;
    sum += qr * qr + qi * qi;
  }
  return v.empty() ? 0.0 : std::sqrt(sum / static_cast<double>(2 * v.size()));
}

}  // namespace

double DormandPrince45::initial_step(const RhsFunction& f, std::span<const cplx> y0, std::span<const cplx> f0,
                                     double t_end) const {
  const double tol = opts_.tol;
  const double d0 = scaled_rms(y0, y0, y0, tol);
  const double d1n = scaled_rms(f0, y0, y0, tol);
  double h0 = (d0 < 1e-10 || d1n < 1e-10) ? 1e-6 : 0.01 * d0 / d1n;
  h0 = std::min(h0, t_end);
  std::vector<cplx> y1(y0.size()), f1(y0.size()), diff(y0.size());
  for (std::size_t i = 0; i < y0.size(); ++i) y1[i] = y0[i] + h0 * f0[i];
  f(y1, f1);
  for (std::size_t i = 0; i < y0.size(); ++i) diff[i] = f1[i] - f0[i];
  const double d2 = scaled_rms(diff, y0, y0, tol) / h0;
  const double dmax = std::max(d1n, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::min({100.0 * h0, h1, t_end});
}

std::vector<cplx> DormandPrince45::run(const RhsFunction& f, std::span<const cplx> y0_in, double t_end,
                                       const std::function<void(const StepInterpolant&)>& on_step,
                                       IntegrationStats* stats_out) const {
  if (!(opts_.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (!(t_end >= 0.0)) throw Error(ErrorCode::InvalidArgument, "t_end must be >= 0");
  const std::size_t dim = y0_in.size();
  std::vector<cplx> y(y0_in.begin(), y0_in.end());
  IntegrationStats stats;
  if (t_end == 0.0 || dim == 0) {
    if (stats_out) *stats_out = stats;
    return y;
  }

  std::vector<cplx> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), ytmp(dim), ynew(dim), err(dim);
  // Compensated summation keeps round-off from accumulating in y over many small steps.
  std::vector<cplx> comp(dim), comp_new(dim);
  f(y, k1);
  ++stats.rhs_evaluations;

  const bool fixed = opts_.fixed_step > 0.0;
  double h = fixed ? opts_.fixed_step : initial_step(f, y, k1, t_end);
  if (!fixed) ++stats.rhs_evaluations;
  double t = 0.0;
  double facold = 1e-4;
  bool last_rejected = false;
  StepInterpolant interp;

  while (t < t_end) {
    if (stats.accepted + stats.rejected >= opts_.max_steps) {
      throw Error(ErrorCode::StiffnessError, "step budget exhausted at t=" + std::to_string(t));
    }
    if (0.1 * std::abs(h) <= std::abs(t) * std::numeric_limits<double>::epsilon() || h <= 0.0) {
      throw Error(ErrorCode::StiffnessError, "step size underflow at t=" + std::to_string(t));
    }
    bool final_step = false;
    if (t + 1.01 * h >= t_end) {
      h = t_end - t;
      final_step = true;
    }

    for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    f(ytmp, k2);
    for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(ytmp, k3);
    for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(ytmp, k4);
    for (std::size_t i = 0; i < dim; ++i) {
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    f(ytmp, k5);
    for (std::size_t i = 0; i < dim; ++i) {
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    f(ytmp, k6);
    for (std::size_t i = 0; i < dim; ++i) {
      const cplx inc = h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]) + comp[i];
      double er = 0.0, ei = 0.0;
      ynew[i] = {two_sum(y[i].real(), inc.real(), er), two_sum(y[i].imag(), inc.imag(), ei)};
      comp_new[i] = {er, ei};
    }
    f(ynew, k7);
    stats.rhs_evaluations += 6;

    double err_norm = 0.0;
    if (!fixed) {
      for (std::size_t i = 0; i < dim; ++i) {
        err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      }
      err_norm = scaled_rms(err, y, ynew, opts_.tol);
      if (!std::isfinite(err_norm)) err_norm = 1e10;
    }

    const double fac11 = std::pow(err_norm, kExpo1);
    if (fixed || err_norm <= 1.0) {
      if (on_step) {
        interp.t0_ = t;
        interp.h_ = h;
        interp.r1_.resize(dim);
        interp.r2_.resize(dim);
        interp.r3_.resize(dim);
        interp.r4_.resize(dim);
        interp.r5_.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) {
          const cplx ydiff = ynew[i] - y[i];
          const cplx bspl = h * k1[i] - ydiff;
          interp.r1_[i] = y[i];
          interp.r2_[i] = ydiff;
          interp.r3_[i] = bspl;
          interp.r4_[i] = ydiff - h * k7[i] - bspl;
          interp.r5_[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
        }
        on_step(interp);
      }
      ++stats.accepted;
      y.swap(ynew);
      comp.swap(comp_new);
      k1.swap(k7);
      t = final_step ? t_end : t + h;
      if (fixed) continue;
      facold = std::max(err_norm, 1e-4);
      double fac = fac11 / std::pow(facold, kBeta);
      fac = std::clamp(fac / kSafety, 1.0 / kMaxGrowth, kMaxShrink);
      double hnew = h / fac;
      if (last_rejected) hnew = std::min(hnew, h);
      last_rejected = false;
      h = hnew;
    } else {
      ++stats.rejected;
      last_rejected = true;
      h = h / std::min(kMaxShrink, fac11 / kSafety);
    }
  }
  if (stats_out) *stats_out = stats;
  return y;
}

std::vector<cplx> DenseTrajectory::evaluate(double t) const {
  if (!(t >= 0.0 && t <= t_end())) throw Error(ErrorCode::DomainError, "trajectory query outside [0, t_end]");
  std::vector<cplx> out(dimension_);
  if (steps_.empty()) return initial_;
  auto it = std::lower_bound(steps_.begin(), steps_.end(), t, [](const StepInterpolant& s, double x) { return s.t1() < x; });
  if (it == steps_.end()) it = std::prev(steps_.end());
  it->evaluate(t, out);
  return out;
}

DenseTrajectory integrate(const CoeffSeq& c, std::span<const cplx> a0, int N, double t_max,
                          const IntegratorOptions& opts) {
  GalerkinSystem sys(c, N);
  if (a0.size() != sys.dimension()) throw Error(ErrorCode::InvalidArgument, "initial state length must be 2N+1");
  DenseTrajectory traj;
  traj.dimension_ = sys.dimension();
  traj.initial_.assign(a0.begin(), a0.end());
  DormandPrince45 solver(opts);
  solver.run(std::ref(sys), a0, t_max, [&traj](const StepInterpolant& s) { traj.steps_.push_back(s); }, &traj.stats_);
  return traj;
}

std::vector<std::vector<cplx>> sample_trajectory(const CoeffSeq& c, std::span<const cplx> a0, int N, double t_max,
                                                 std::span<const double> times, const IntegratorOptions& opts,
                                                 IntegrationStats* stats) {
  GalerkinSystem sys(c, N);
  if (a0.size() != sys.dimension()) throw Error(ErrorCode::InvalidArgument, "initial state length must be 2N+1");
  if (!std::is_sorted(times.begin(), times.end())) throw Error(ErrorCode::InvalidArgument, "query times must ascend");
  if (!times.empty() && (times.front() < 0.0 || times.back() > t_max)) {
    throw Error(ErrorCode::DomainError, "query times must lie in [0, t_max]");
  }
  std::vector<std::vector<cplx>> out(times.size(), std::vector<cplx>(sys.dimension()));
  std::size_t next = 0;
  // Queries at t = 0 need no step.
  while (next < times.size() && times[next] == 0.0) {
    std::copy(a0.begin(), a0.end(), out[next].begin());
    ++next;
  }
  DormandPrince45 solver(opts);
  const auto final_state = solver.run(
      std::ref(sys), a0, t_max,
      [&](const StepInterpolant& s) {
        while (next < times.size() && times[next] <= s.t1()) {
          s.evaluate(times[next], out[next]);
          ++next;
        }
      },
      stats);
  for (; next < times.size(); ++next) out[next] = final_state;
  return out;
}

std::vector<cplx> ApproxSolution::evaluate(double t) const {
  std::vector<cplx> v;
  v.reserve(modes.size());
  for (const auto& m : modes) v.push_back(advec::evaluate(m, t));
  return v;
}

namespace {

ApproxSolution fit_samples(const CoeffSeq& c, int N, int n, double t_max, const IntegratorOptions& opts,
                           const std::vector<std::vector<cplx>>& samples, const IntegrationStats& stats) {
  ApproxSolution sol;
  sol.N = N;
  sol.n = n;
  sol.t_max = t_max;
  sol.tol = opts.tol;
  sol.c_used = c;
  sol.stats = stats;
  const std::size_t dim = static_cast<std::size_t>(2 * N + 1);
  sol.modes.reserve(dim);
  std::vector<cplx> column(samples.size());
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < samples.size(); ++j) column[j] = samples[j][k];
    sol.modes.push_back(fit(column, t_max));
  }
  return sol;
}

}  // namespace

ApproxSolution build_solution(const CoeffSeq& c, std::span<const cplx> a0, int N, int n, double t_max,
                              const IntegratorOptions& opts) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "Chebyshev degree must be >= 0");
  const auto nodes = cheb_points(n, t_max);
  IntegrationStats stats;
  const auto samples = sample_trajectory(c, a0, N, t_max, nodes, opts, &stats);
  return fit_samples(c, N, n, t_max, opts, samples, stats);
}

ApproxSolution build_solution_auto(const CoeffSeq& c, std::span<const cplx> a0, int N, double t_max,
                                   const IntegratorOptions& opts, int max_n) {
  constexpr double kTarget = 1e-12;
  int n = 8;
  for (;;) {
    const auto nodes = cheb_points(n, t_max);
    IntegrationStats stats;
    const auto samples = sample_trajectory(c, a0, N, t_max, nodes, opts, &stats);
    ApproxSolution sol = fit_samples(c, N, n, t_max, opts, samples, stats);
    double trailing = 0.0;
    double roundtrip = 0.0;
    for (std::size_t k = 0; k < sol.modes.size(); ++k) {
      const auto& mode = sol.modes[k];
      trailing = std::max(trailing, std::abs(mode.coeffs.back()));
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        roundtrip = std::max(roundtrip, std::abs(evaluate(mode, nodes[j]) - samples[j][k]));
      }
    }
    if (trailing + roundtrip < kTarget || 2 * n > max_n) return sol;
    n *= 2;
  }
}

}  // namespace advec
