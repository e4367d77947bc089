#include "bievo/log_complex.hpp"

#include <cmath>
#include <numbers>

#include "bievo/errors.hpp"

namespace bievo {

double canonical_phase(double phase) {
  constexpr double kPi = std::numbers::pi;
  double p = std::remainder(phase, 2.0 * kPi);  // [-pi, pi]
  if (p <= -kPi) p += 2.0 * kPi;
  return p;
}

LogComplex LogComplex::from_log_polar(double log_mag, double phase) {
  if (std::isnan(log_mag) || log_mag == std::numeric_limits<double>::infinity()) {
    throw DomainError("LogComplex: log-magnitude must be finite or -inf");
  }
  if (!std::isfinite(phase)) {
    throw DomainError("LogComplex: phase must be finite");
  }
  LogComplex w;
  w.log_mag_ = log_mag;
  w.phase_ = w.is_zero() ? 0.0 : canonical_phase(phase);
  return w;
}

LogComplex LogComplex::from_complex(std::complex<double> value) {
  const double mag = std::abs(value);
  if (mag == 0.0) return zero();
  return from_log_polar(std::log(mag), std::arg(value));
}

double LogComplex::magnitude() const { return std::exp(log_mag_); }

std::complex<double> LogComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mag_), phase_);
}

LogComplex LogComplex::conj() const {
  LogComplex w = *this;
  if (!w.is_zero()) w.phase_ = canonical_phase(-phase_);
  return w;
}

LogComplex& LogComplex::operator*=(const LogComplex& other) {
  if (is_zero() || other.is_zero()) {
    *this = zero();
    return *this;
  }
  log_mag_ += other.log_mag_;
  phase_ = canonical_phase(phase_ + other.phase_);
  return *this;
}

LogComplex& LogComplex::operator/=(const LogComplex& other) {
  if (other.is_zero()) throw DomainError("LogComplex: division by zero");
  if (is_zero()) return *this;
  log_mag_ -= other.log_mag_;
  phase_ = canonical_phase(phase_ - other.phase_);
  return *this;
}

}  // namespace bievo
