#include "bievo/regime.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bievo/errors.hpp"

namespace bievo {
namespace {

constexpr double kThreePi = 3.0 * std::numbers::pi;

void require_fixed(const RegimeInputs& in, const char* what) {
  if (in.model() != TauModel::kFixed) {
    throw ModeError(std::string(what) + " needs a fixed time step; no upper bound applies when tau = c/sqrt(N+1)");
  }
}

}  // namespace

RegimeInputs::RegimeInputs(double f, TauModel model, double time_param)
    : f_(f), lambda_sd_(std::sqrt(f) * kLambdaSdScale), model_(model), time_param_(time_param) {
  if (!(f > 0.0 && f <= 1.0)) throw DomainError("RegimeInputs: f must lie in (0, 1]");
  if (!(time_param > 0.0) || !std::isfinite(time_param)) {
    throw DomainError(model == TauModel::kFixed ? "RegimeInputs: tau must be > 0" : "RegimeInputs: c must be > 0");
  }
}

RegimeInputs RegimeInputs::fixed(double f, double tau) { return RegimeInputs(f, TauModel::kFixed, tau); }

RegimeInputs RegimeInputs::scaled(double f, double c) { return RegimeInputs(f, TauModel::kScaled, c); }

double RegimeInputs::tau() const {
  if (model_ != TauModel::kFixed) throw ModeError("RegimeInputs::tau: scaled model has no fixed step");
  return time_param_;
}

double RegimeInputs::c() const {
  if (model_ != TauModel::kScaled) throw ModeError("RegimeInputs::c: fixed model has no scale constant");
  return time_param_;
}

double RegimeInputs::tau_at(double steps) const {
  if (!(steps >= 0.0) || !std::isfinite(steps)) throw DomainError("RegimeInputs::tau_at requires finite N >= 0");
  if (model_ == TauModel::kFixed) return time_param_;
  return time_param_ / std::sqrt(steps + 1.0);
}

double upper_bound_total_time(const RegimeInputs& inputs) {
  require_fixed(inputs, "upper_bound_total_time");
  return kThreePi / (inputs.tau() * inputs.lambda_sd());
}

RegimeWindow validity_window(const RegimeInputs& inputs, bool strict, double ratio_threshold) {
  require_fixed(inputs, "validity_window");
  RegimeWindow w{kLessStringentLowerBound, upper_bound_total_time(inputs), strict};
  if (strict) {
    w.stringent_lower_bound_s = kQuotedBoundConstant / std::sqrt(inputs.f()) / ratio_threshold;
    w.conflict = w.stringent_lower_bound_s > ratio_threshold * w.upper_bound_s;
  }
  return w;
}

double required_f_for_duration(double duration_s, double tau) {
  if (!(duration_s > 0.0)) throw DomainError("required_f_for_duration requires T > 0");
  if (!(tau > 0.0)) throw DomainError("required_f_for_duration requires tau > 0");
  const double root_f = kThreePi / (tau * duration_s * kLambdaSdScale);
  return root_f * root_f;
}

TauScalingCheck tau_scaling_check(const RegimeInputs& inputs, double ratio_threshold) {
  if (inputs.model() != TauModel::kScaled) {
    throw ModeError("tau_scaling_check needs the scaled model tau = c/sqrt(N+1)");
  }
  const double c2 = inputs.c() * inputs.c();
  const double product = c2 * inputs.lambda_sd();
  return {product <= ratio_threshold * kThreePi, product / kThreePi, kThreePi / c2};
}

double subsidiary_vs_width_ratio(const RegimeInputs& inputs, double steps) {
  const double tau = inputs.tau_at(steps);
  return (kThreePi / (steps + 1.0)) / (tau * tau * inputs.lambda_sd());
}

}  // namespace bievo
