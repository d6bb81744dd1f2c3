#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "advec/config.hpp"
#include "advec/verifier.hpp"

namespace advec {

/// c(x) = 0.51 + sin^2(x - 1) with a Gaussian bump of width 10 in Fourier space
/// as initial datum.
ProblemSpec example1();
/// c(x) = 1 + 0.49 cos 2x, u0(x) = 3 / (5 + 4 cos x).
ProblemSpec example2();
/// c(x) = -1 + 0.3 sin 3x - 0.19 cos 2x with the initial datum of example2.
ProblemSpec example3();

/// Problem from a key-value description:
///
///   name = my-problem
///   c[0] = 1                 # re[, im] as decimal strings
///   c[2] = 0.245
///   c[-2] = 0.245
///   a0[0] = 1                # listed initial coefficients, or
///   a0.power = -0.5          # a0_k = r^{|k|}, |r| < 1
///   tail = geometric P R     # or: erfc P W | custom V | explicit
///   c_tail.l1 = 0            # bounds for c beyond the listed coefficients
///   c_tail.weighted_l1 = 0
///   period = 3.14159
///
/// Without a tail entry, listed coefficients get an explicit tail and a0.power
/// gets the exact geometric one. Throws CoefficientNotReal for non-Hermitian c
/// and ParseError for malformed entries.
ProblemSpec custom(const KeyValues& config);

std::vector<std::string> builtin_names();
/// Throws InvalidArgument for an unknown name.
ProblemSpec builtin(std::string_view name);
/// A builtin name or the path of a problem file.
ProblemSpec load_problem(const std::string& name_or_path);

}  // namespace advec
