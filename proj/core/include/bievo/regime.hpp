#pragma once

// Validity window of the bievolution approximation in physical units.
//
// The eigenvalue density of i[H_F, H_B] is modelled as a Gaussian of width
// lambda_SD = sqrt(f) * 1e57 s^-2, f being the fraction of T-violating
// particles. The first subsidiary maximum of the interference function,
// at z = 3 pi / (N+1), must stay far outside that width:
//
//   3 pi / (N+1) >> tau^2 lambda_SD   <=>   N tau << 3 pi / (tau lambda_SD).

#include "bievo/features.hpp"

namespace bievo {

/// Step size used when tau is pinned to the Planck time, in seconds.
inline constexpr double kPlanckTime = 5e-44;
/// lambda_SD / sqrt(f), in s^-2.
inline constexpr double kLambdaSdScale = 1e57;
/// Less-stringent lower bound on the total time N tau, in seconds.
inline constexpr double kLessStringentLowerBound = 1e-17;
/// Rounded form of 3 pi / (tau lambda_SD) * sqrt(f), in seconds, as quoted
/// for the stringent all-terms condition N tau >> 1e-13 / sqrt(f).
inline constexpr double kQuotedBoundConstant = 1e-13;
inline constexpr double kSecondsPerYear = 3.156e7;

enum class TauModel { kFixed, kScaled };

class RegimeInputs {
 public:
  /// tau fixed per step (seconds).
  static RegimeInputs fixed(double f, double tau = kPlanckTime);
  /// tau = c / sqrt(N+1) (c in seconds * step^(1/2)).
  static RegimeInputs scaled(double f, double c);

  double f() const { return f_; }
  double lambda_sd() const { return lambda_sd_; }
  TauModel model() const { return model_; }
  /// Fixed step; ModeError in scaled mode.
  double tau() const;
  /// Scale constant; ModeError in fixed mode.
  double c() const;
  /// Step size after N steps under either model. N is real-valued here since
  /// the interesting step counts (~1e30 at the Planck time) exceed int64.
  double tau_at(double steps) const;

 private:
  RegimeInputs(double f, TauModel model, double time_param);

  double f_;
  double lambda_sd_;
  TauModel model_;
  double time_param_;
};

struct RegimeWindow {
  double lower_bound_s;
  double upper_bound_s;
  bool strict;
  /// Strict mode only: stringent lower bound (>> 1e-13/sqrt(f)) exceeds the
  /// much-less-than upper bound.
  bool conflict = false;
  double stringent_lower_bound_s = 0.0;

  bool empty() const { return upper_bound_s <= lower_bound_s; }
};

/// 3 pi / (tau lambda_SD). ModeError in scaled mode.
double upper_bound_total_time(const RegimeInputs& inputs);

/// Non-strict: (1e-17 s, upper bound). Strict: additionally compares
/// N tau >= (1e-13/sqrt(f)) / ratio with N tau <= ratio * upper bound.
RegimeWindow validity_window(const RegimeInputs& inputs, bool strict, double ratio_threshold = kMuchLessRatio);

/// f for which upper_bound_total_time equals `duration_s`.
double required_f_for_duration(double duration_s, double tau = kPlanckTime);

struct TauScalingCheck {
  bool satisfied;
  double margin;                    // c^2 lambda_SD / (3 pi)
  double first_subsidiary_lambda;   // 3 pi / c^2, in s^-2
};

/// c^2 lambda_SD <= ratio * 3 pi. ModeError in fixed mode.
TauScalingCheck tau_scaling_check(const RegimeInputs& inputs, double ratio_threshold = kMuchLessRatio);

/// (3 pi / (N+1)) / (tau_N^2 lambda_SD); >> 1 is needed for bievolution.
/// In scaled mode tau_N = c / sqrt(N+1) and the ratio does not depend on N.
double subsidiary_vs_width_ratio(const RegimeInputs& inputs, double steps);

}  // namespace bievo
