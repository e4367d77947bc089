#pragma once

#include <complex>
#include <limits>

namespace bievo {

/// Wraps an angle into the canonical interval (-pi, pi].
double canonical_phase(double phase);

/// Complex number held as (ln|w|, arg w).
///
/// Interference values grow like binomial coefficients, e.g. C(8000, 400)
/// is far outside double range, so magnitudes live in the log domain.
/// A log-magnitude of -inf is an exact zero and always carries phase 0.
class LogComplex {
 public:
  /// Exact zero.
  constexpr LogComplex() = default;

  static LogComplex from_log_polar(double log_mag, double phase);
  static LogComplex from_complex(std::complex<double> value);
  static LogComplex one() { return from_log_polar(0.0, 0.0); }
  static constexpr LogComplex zero() { return LogComplex{}; }

  double log_mag() const { return log_mag_; }
  double phase() const { return phase_; }
  bool is_zero() const { return log_mag_ == -std::numeric_limits<double>::infinity(); }

  /// |w|; overflows to +inf when log_mag > ~709.
  double magnitude() const;
  std::complex<double> to_complex() const;

  LogComplex conj() const;

  LogComplex& operator*=(const LogComplex& other);
  LogComplex& operator/=(const LogComplex& other);

  friend LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
  friend LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }

 private:
  double log_mag_ = -std::numeric_limits<double>::infinity();
  double phase_ = 0.0;
};

}  // namespace bievo
