#pragma once

// Interference function of symmetric (forward + backward) time evolution.
//
// I_{m,n}(z) is the sum of exp(-i s z) over all n-step non-increasing index
// chains m >= v >= ... >= l >= k >= 0, with s the chain's index sum. It is
// the weight that multiplies each eigenspace of i[H_F, H_B] when the m
// backward and n forward step operators of a path are reordered. Three
// evaluators are provided and cross-checked against each other:
//
//   * interference_sum_oracle  - term-by-term nested sum, C(m+n, n) terms
//   * interference_qrecursion  - lattice-path recurrence, O(m n)
//   * interference_product     - closed sine product in the log domain

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "bievo/log_complex.hpp"

namespace bievo {

/// Enumeration cap for the nested-sum oracle (number of chains C(N, n)).
inline constexpr std::uint64_t kSumOracleCap = 1'000'000;
/// Table cap for the recurrence (m * n cells).
inline constexpr std::uint64_t kRecurrenceCap = 100'000'000;
/// Below this |sin(q z / 2)| the sine product switches to its expansion about
/// the nearby rational point.
inline constexpr double kSingularityThreshold = 1e-9;

/// N total steps of which n are forward; m = N - n are backward.
class PathCount {
 public:
  PathCount(std::int64_t total, std::int64_t forward);

  /// Builds the pair from backward/forward step counts (m, n).
  static PathCount from_steps(std::int64_t backward, std::int64_t forward);

  std::int64_t total() const { return total_; }
  std::int64_t forward() const { return forward_; }
  std::int64_t backward() const { return total_ - forward_; }

  friend bool operator==(const PathCount&, const PathCount&) = default;

 private:
  std::int64_t total_;
  std::int64_t forward_;
};

/// Dimensionless argument z = tau^2 lambda.
class PhaseArg {
 public:
  explicit PhaseArg(double z);
  static PhaseArg from_time_step(double tau, double lambda);

  double value() const { return z_; }
  std::optional<double> tau() const { return tau_; }
  std::optional<double> lambda() const { return lambda_; }

 private:
  double z_;
  std::optional<double> tau_;
  std::optional<double> lambda_;
};

/// ln C(N, n). Exact to ~1e-13 relative for N up to 1e6.
double log_binomial(std::int64_t total, std::int64_t forward);

/// True when C(N, n) > cap; evaluated in exact integer arithmetic.
bool binomial_exceeds(std::int64_t total, std::int64_t forward, std::uint64_t cap);

/// Number of chains with each index sum s = 0 .. m n.
/// Throws EnumerationCapExceeded when C(m+n, n) > cap.
std::vector<std::uint64_t> path_exponent_histogram(std::int64_t backward, std::int64_t forward,
                                                   std::uint64_t cap);

std::complex<double> interference_sum_oracle(PathCount pc, PhaseArg z);

/// Recurrence I_{m,n} = I_{m,n-1} + exp(-i n z) I_{m-1,n}, I_{m,0} = I_{0,n} = 1.
std::complex<double> interference_qrecursion(PathCount pc, PhaseArg z);

/// Same recurrence normalized by C(m+n, n) so every cell stays in [0, 1];
/// the result is returned in the log domain and never overflows.
LogComplex interference_qrecursion_log(PathCount pc, PhaseArg z);

/// exp(-i n (N-n) z / 2) prod_{q=1..n} sin((N+1-q) z / 2) / sin(q z / 2).
///
/// When some denominator |sin(q z / 2)| drops below kSingularityThreshold, z
/// is within reach of a rational multiple 2 pi k / d with d <= n. The factors
/// that vanish there are evaluated as sin(pi a delta) about that point, so
/// the removable 0/0 cancels exactly instead of going through a recurrence
/// whose absolute error scales with C(N, n).
LogComplex interference_product(PathCount pc, PhaseArg z);

/// Envelope F_{N,n}(z): C(N, n) up to z = 2 pi / (N+1), (2/z)^n / n! beyond.
LogComplex scaling_function(PathCount pc, PhaseArg z);

/// Y = I / F. Finite even when I and F both overflow.
std::complex<double> scaled_interference(PathCount pc, PhaseArg z);

/// Y evaluated at z / (N+1).
std::complex<double> rescaled_interference(PathCount pc, double z);

}  // namespace bievo
