#include "bievo/interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "bievo/errors.hpp"

namespace bievo {
namespace {

constexpr double kPi = std::numbers::pi;

// sin(pi r) for r in [-1, 1]; exact zeros at r = 0 and r = +-1.
double sin_pi_reduced(double r) {
  const double sign = r < 0.0 ? -1.0 : 1.0;
  double x = std::abs(r);
  if (x > 0.5) x = 1.0 - x;  // exact (Sterbenz)
  if (x == 0.0) return 0.0;
  if (x <= 0.25) return sign * std::sin(kPi * x);
  return sign * std::cos(kPi * (0.5 - x));
}

// sin(pi a w) for an integer-valued double a. The product a*w is split into
// hi + lo with an fma so the reduction mod 2 keeps the low-order bits.
double sin_pi_scaled(double a, double w) {
  const double hi = a * w;
  const double lo = std::fma(a, w, -hi);
  double r = std::fmod(hi, 2.0) + lo;
  if (r > 1.0) {
    r -= 2.0;
  } else if (r < -1.0) {
    r += 2.0;
  }
  return sin_pi_reduced(r);
}

// (a * w) mod 2, with the same hi/lo split.
double turns_mod2(double a, double w) {
  const double hi = a * w;
  const double lo = std::fma(a, w, -hi);
  return std::fmod(hi, 2.0) + lo;
}

// Visits the index sum of every chain m >= i_1 >= ... >= i_n >= 0 exactly once.
// Recursion runs over whichever of (positions, values) is shorter.
template <typename Visit>
void for_each_chain_sum(std::int64_t m, std::int64_t n, Visit&& visit) {
  if (n <= m) {
    // positions: choose i_1 .. i_n in turn
    auto rec = [&](auto&& self, std::int64_t depth, std::int64_t upper, std::int64_t sum) -> void {
      if (depth == n) {
        visit(sum);
        return;
      }
      for (std::int64_t v = 0; v <= upper; ++v) self(self, depth + 1, v, sum + v);
    };
    rec(rec, 0, m, 0);
  } else {
    // values: choose how many indices equal m, m-1, ..., 0
    auto rec = [&](auto&& self, std::int64_t value, std::int64_t remaining, std::int64_t sum) -> void {
      if (value == 0) {
        visit(sum);
        return;
      }
      for (std::int64_t c = 0; c <= remaining; ++c) self(self, value - 1, remaining - c, sum + c * value);
    };
    rec(rec, m, n, 0);
  }
}

void require_cap(const PathCount& pc, std::uint64_t cap, const char* what) {
  if (binomial_exceeds(pc.total(), pc.forward(), cap)) {
    throw EnumerationCapExceeded(std::string(what) + ": C(N, n) = C(" + std::to_string(pc.total()) + ", " +
                                 std::to_string(pc.forward()) + ") exceeds the enumeration cap of " +
                                 std::to_string(cap) + " paths");
  }
}

void require_table(const PathCount& pc) {
  const auto cells = static_cast<double>(pc.backward()) * static_cast<double>(pc.forward());
  if (cells > static_cast<double>(kRecurrenceCap)) {
    throw TableCapExceeded("interference_qrecursion: m * n = " + std::to_string(pc.backward()) + " * " +
                           std::to_string(pc.forward()) + " exceeds the table cap of " +
                           std::to_string(kRecurrenceCap));
  }
}

}  // namespace

PathCount::PathCount(std::int64_t total, std::int64_t forward) : total_(total), forward_(forward) {
  if (total < 0 || forward < 0 || forward > total) {
    throw DomainError("PathCount requires 0 <= n <= N (got N = " + std::to_string(total) +
                      ", n = " + std::to_string(forward) + ")");
  }
}

PathCount PathCount::from_steps(std::int64_t backward, std::int64_t forward) {
  if (backward < 0 || forward < 0) throw DomainError("PathCount requires m >= 0 and n >= 0");
  return PathCount(backward + forward, forward);
}

PhaseArg::PhaseArg(double z) : z_(z) {
  if (!std::isfinite(z)) throw DomainError("PhaseArg: z must be finite");
}

PhaseArg PhaseArg::from_time_step(double tau, double lambda) {
  PhaseArg arg(tau * tau * lambda);
  arg.tau_ = tau;
  arg.lambda_ = lambda;
  return arg;
}

double log_binomial(std::int64_t total, std::int64_t forward) {
  if (forward < 0 || total < 0 || forward > total) {
    throw DomainError("log_binomial requires 0 <= n <= N (got N = " + std::to_string(total) +
                      ", n = " + std::to_string(forward) + ")");
  }
  const std::int64_t k = std::min(forward, total - forward);
  // Direct summation avoids cancellation between large lgamma values when
  // k is small compared with N.
  if (k <= 2000) {
    double acc = 0.0;
    for (std::int64_t i = 1; i <= k; ++i) {
      acc += std::log(static_cast<double>(total - k + i) / static_cast<double>(i));
    }
    return acc;
  }
  return std::lgamma(static_cast<double>(total) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(total - k) + 1.0);
}

bool binomial_exceeds(std::int64_t total, std::int64_t forward, std::uint64_t cap) {
  if (forward < 0 || total < 0 || forward > total) {
    throw DomainError("binomial_exceeds requires 0 <= n <= N");
  }
  const std::int64_t k = std::min(forward, total - forward);
  // C(N, i) = C(N, i-1) * (N - i + 1) / i. Dividing out gcd(C, i) first keeps
  // both factors integral, so the overflow test is exact.
  std::uint64_t c = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    const auto iu = static_cast<std::uint64_t>(i);
    const std::uint64_t g = std::gcd(c, iu);
    const std::uint64_t factor = static_cast<std::uint64_t>(total - i + 1) / (iu / g);
    const std::uint64_t base = c / g;
    if (base > std::numeric_limits<std::uint64_t>::max() / factor) return true;
    c = base * factor;
    if (c > cap) return true;
  }
  return c > cap;
}

std::vector<std::uint64_t> path_exponent_histogram(std::int64_t backward, std::int64_t forward,
                                                   std::uint64_t cap) {
  const auto pc = PathCount::from_steps(backward, forward);
  require_cap(pc, cap, "path_exponent_histogram");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(backward * forward + 1), 0);
  for_each_chain_sum(backward, forward, [&](std::int64_t s) { ++counts[static_cast<std::size_t>(s)]; });
  return counts;
}

std::complex<double> interference_sum_oracle(PathCount pc, PhaseArg z) {
  require_cap(pc, kSumOracleCap, "interference_sum_oracle");
  const double zv = z.value();
  std::complex<double> acc{0.0, 0.0};
  for_each_chain_sum(pc.backward(), pc.forward(), [&](std::int64_t s) {
    acc += std::polar(1.0, -static_cast<double>(s) * zv);
  });
  return acc;
}

std::complex<double> interference_qrecursion(PathCount pc, PhaseArg z) {
  require_table(pc);
  const std::int64_t m = pc.backward();
  const std::int64_t n = pc.forward();
  std::vector<std::complex<double>> phases(static_cast<std::size_t>(n + 1));
  for (std::int64_t j = 0; j <= n; ++j) phases[j] = std::polar(1.0, -static_cast<double>(j) * z.value());

  // row[j] holds I_{i,j}; before the update of cell j it still holds I_{i-1,j}.
  std::vector<std::complex<double>> row(static_cast<std::size_t>(n + 1), {1.0, 0.0});
  for (std::int64_t i = 1; i <= m; ++i) {
    for (std::int64_t j = 1; j <= n; ++j) row[j] = row[j - 1] + phases[j] * row[j];
  }
  return row[static_cast<std::size_t>(n)];
}

LogComplex interference_qrecursion_log(PathCount pc, PhaseArg z) {
  require_table(pc);
  const std::int64_t m = pc.backward();
  const std::int64_t n = pc.forward();
  std::vector<std::complex<double>> phases(static_cast<std::size_t>(n + 1));
  for (std::int64_t j = 0; j <= n; ++j) phases[j] = std::polar(1.0, -static_cast<double>(j) * z.value());

  // J_{i,j} = I_{i,j} / C(i+j, j) obeys a convex-weight version of the recurrence.
  std::vector<std::complex<double>> row(static_cast<std::size_t>(n + 1), {1.0, 0.0});
  for (std::int64_t i = 1; i <= m; ++i) {
    const auto di = static_cast<double>(i);
    for (std::int64_t j = 1; j <= n; ++j) {
      const double inv = 1.0 / (di + static_cast<double>(j));
      row[j] = (static_cast<double>(j) * inv) * row[j - 1] + (di * inv) * phases[j] * row[j];
    }
  }
  const auto normalized = LogComplex::from_complex(row[static_cast<std::size_t>(n)]);
  if (normalized.is_zero()) return normalized;
  return LogComplex::from_log_polar(normalized.log_mag() + log_binomial(pc.total(), n), normalized.phase());
}

LogComplex interference_product(PathCount pc, PhaseArg z) {
  const std::int64_t total = pc.total();
  const std::int64_t n = pc.forward();
  if (n == 0 || n == total) return LogComplex::one();

  // The function is a polynomial in exp(-iz): reduce z to turns in [-1/2, 1/2]
  // and use I(-z) = conj(I(z)).
  double w = z.value() / (2.0 * kPi);
  w -= std::nearbyint(w);
  const bool conjugate = w < 0.0;
  w = std::abs(w);

  std::int64_t q_small = 0;
  double smallest = kSingularityThreshold;
  for (std::int64_t q = 1; q <= n; ++q) {
    const double s = std::abs(sin_pi_scaled(static_cast<double>(q), w));
    if (s < smallest) {
      smallest = s;
      q_small = q;
    }
  }

  double log_mag = 0.0;
  std::int64_t negatives = 0;
  if (q_small == 0) {
    for (std::int64_t q = 1; q <= n; ++q) {
      const double num = sin_pi_scaled(static_cast<double>(total + 1 - q), w);
      if (num == 0.0) return LogComplex::zero();
      const double den = sin_pi_scaled(static_cast<double>(q), w);
      log_mag += std::log(std::abs(num / den));
      negatives += (num < 0.0) != (den < 0.0) ? 1 : 0;
    }
  } else {
    // w sits next to a rational k/d with d <= n. Every factor whose argument
    // a w is near an integer is written as (-1)^(a k / d) sin(pi a delta),
    // delta = w - k/d, so numerator and denominator zeros cancel exactly.
    const auto j = static_cast<std::int64_t>(std::nearbyint(static_cast<double>(q_small) * w));
    const std::int64_t g = std::gcd(j, q_small);
    const std::int64_t k = j / g;
    const std::int64_t d = q_small / g;
    const double hi = static_cast<double>(k) / static_cast<double>(d);
    const double lo = std::fma(-hi, static_cast<double>(d), static_cast<double>(k)) / static_cast<double>(d);
    const double delta = (w - hi) - lo;

    std::int64_t excess = 0;  // vanishing numerators minus vanishing denominators
    auto factor = [&](std::int64_t a, int sign) {
      if (a % d != 0) {
        const double s = sin_pi_scaled(static_cast<double>(a), w);
        if (s == 0.0) return false;
        log_mag += sign * std::log(std::abs(s));
        negatives += s < 0.0 ? 1 : 0;
        return true;
      }
      const double x = kPi * static_cast<double>(a) * delta;
      const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
      log_mag += sign * std::log(kPi * static_cast<double>(a) * std::abs(sinc));
      negatives += ((a / d) * k) % 2 + (sinc < 0.0 ? 1 : 0);
      excess += sign;
      return true;
    };
    for (std::int64_t q = 1; q <= n; ++q) {
      if (!factor(total + 1 - q, 1)) return LogComplex::zero();
      factor(q, -1);
    }
    // A ratio of Gaussian binomial products never has more vanishing
    // denominators than numerators.
    if (excess < 0) return interference_qrecursion_log(pc, z);
    if (excess > 0) {
      if (delta == 0.0) return LogComplex::zero();
      log_mag += static_cast<double>(excess) * std::log(std::abs(delta));
      negatives += delta < 0.0 ? excess : 0;
    }
  }
  const double spread = static_cast<double>(n) * static_cast<double>(total - n);
  double phase = -kPi * turns_mod2(spread, w) + (negatives % 2 == 1 ? kPi : 0.0);
  if (conjugate) phase = -phase;
  return LogComplex::from_log_polar(log_mag, phase);
}

LogComplex scaling_function(PathCount pc, PhaseArg z) {
  const double zv = z.value();
  if (zv < 0.0) throw DomainError("scaling_function requires z >= 0");
  const std::int64_t n = pc.forward();
  if (zv <= 2.0 * kPi / static_cast<double>(pc.total() + 1)) {
    return LogComplex::from_log_polar(log_binomial(pc.total(), n), 0.0);
  }
  const auto dn = static_cast<double>(n);
  return LogComplex::from_log_polar(dn * std::log(2.0 / zv) - std::lgamma(dn + 1.0), 0.0);
}

std::complex<double> scaled_interference(PathCount pc, PhaseArg z) {
  if (z.value() < 0.0) throw DomainError("scaled_interference requires z >= 0");
  return (interference_product(pc, z) / scaling_function(pc, z)).to_complex();
}

std::complex<double> rescaled_interference(PathCount pc, double z) {
  if (z < 0.0) throw DomainError("rescaled_interference requires z >= 0");
  return scaled_interference(pc, PhaseArg(z / static_cast<double>(pc.total() + 1)));
}

}  // namespace bievo
