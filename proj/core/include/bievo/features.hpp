#pragma once

// Analytic landmarks of |I_{N-n,n}(z)| for z > 0 and their numerical checks.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bievo/interference.hpp"

namespace bievo {

/// Numerical reading of "much less than": a << b means a <= kMuchLessRatio * b.
inline constexpr double kMuchLessRatio = 0.1;

struct SubsidiaryMaximum {
  std::int64_t index;    // m >= 1
  double position;       // (2m+1) pi / (N+1)
  double bound_log_mag;  // ln[(2/z_m)^n / n!]
  bool bound_valid;      // z_m <= ratio * 4 pi / n
};

struct UnitModulusPoints {
  std::vector<double> family_a;  // 2 m pi / (N+1)
  std::vector<double> family_b;  // 2 m pi / (N-n)
};

struct PeakWidths {
  double eps_prin;
  double eps_sub;
  double bound_prin;  // 4.9 / (sqrt(k) N)
  double bound_sub;   // 2.8 / (sqrt(k) N)

  bool prin_within_bound() const { return eps_prin <= bound_prin; }
  bool sub_within_bound() const { return eps_sub <= bound_sub; }
};

/// What the golden-section search maximizes.
enum class PeakObjective {
  /// ln|I(z)| + n ln z, i.e. ln|Y(z)| up to a constant beyond the first zero.
  /// The 1/z^n envelope is divided out so the search lands on the
  /// oscillation peak the envelope bound describes.
  kScaled,
  /// ln|I(z)| itself.
  kRaw,
};

struct Extremum {
  double position;
  double log_mag;  // ln|I| at position
};

struct FeatureReport {
  std::vector<double> zeros;
  std::vector<double> unity_points_a;
  std::vector<double> unity_points_b;
  std::vector<SubsidiaryMaximum> subsidiary;
  std::optional<PeakWidths> widths;  // absent for n in {0, N}
};

/// Zeros 2 m pi / (N+1-q), q = 1..n, m >= 1, up to z_max.
///
/// A candidate 2 pi k / d (k/d reduced) is kept only when more numerator
/// factors than denominator factors vanish there; otherwise the sine product
/// has a removable 0/0 and the function need not vanish.
std::vector<double> zero_locations(PathCount pc, double z_max);

/// Points where every factor of the sine product has modulus one.
/// Points at which some sin(q z / 2), q <= n, vanishes are excluded.
/// Throws DomainError if family B is requested with n == N.
UnitModulusPoints unit_modulus_points(PathCount pc, double z_max, bool include_family_b = true);

std::vector<SubsidiaryMaximum> subsidiary_maxima(PathCount pc, std::int64_t m_max,
                                                 double ratio_threshold = kMuchLessRatio);

/// C(N,n) [1 - eps^2 n (N-n)(N+1) / 24].
double quadratic_model_principal(PathCount pc, double eps);
/// (2/z_m)^n / n! [1 - eps^2 n (N-n)(N+1) / 8].
double quadratic_model_subsidiary(PathCount pc, std::int64_t m, double eps);

/// The bracketed factors alone, i.e. the models divided by their peak value.
double principal_quadratic_factor(PathCount pc, double eps);
double subsidiary_quadratic_factor(PathCount pc, double eps);

/// True when |eps| <= pi / (2 (N+1)), the range the quadratic models assume.
bool quadratic_model_in_range(PathCount pc, double eps);

/// Throws DomainError for n in {0, N}.
PeakWidths peak_widths(PathCount pc);

/// Golden-section refinement of a single maximum inside `bracket`.
///
/// A bracket containing z = 0 returns the principal maximum (0, ln C(N,n)).
/// Otherwise the search runs until the bracket is narrower than
/// 1e-4 pi / (N+1). Throws BracketError when both ends exceed the midpoint.
Extremum locate_extremum_numeric(PathCount pc, std::pair<double, double> bracket,
                                 PeakObjective objective = PeakObjective::kScaled);

/// Refines the m-th subsidiary maximum from a bracket of half-width
/// pi/(N+1) around z_m, clipped so the search starts after the first zero
/// at 2 pi / N.
Extremum locate_subsidiary_maximum(PathCount pc, std::int64_t m,
                                   PeakObjective objective = PeakObjective::kScaled);

/// Empty report for n in {0, N}, where I is identically 1.
FeatureReport analyze_features(PathCount pc, double z_max, std::int64_t m_max,
                               double ratio_threshold = kMuchLessRatio);

}  // namespace bievo
