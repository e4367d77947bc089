#include "bievo/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include "bievo/errors.hpp"

namespace bievo {
namespace {

constexpr double kPi = std::numbers::pi;

// Reduced fraction k/d standing for z = 2 pi k / d.
struct Turn {
  std::int64_t k;
  std::int64_t d;
};

struct TurnLess {
  bool operator()(const Turn& a, const Turn& b) const {
    // Distinct reduced fractions with denominators below 2^31 differ by far
    // more than long double resolution.
    if (a.k == b.k && a.d == b.d) return false;
    return static_cast<long double>(a.k) / a.d < static_cast<long double>(b.k) / b.d;
  }
};

Turn reduce(std::int64_t k, std::int64_t d) {
  const std::int64_t g = std::gcd(k, d);
  return {k / g, d / g};
}

double to_z(const Turn& t) { return 2.0 * kPi * static_cast<double>(t.k) / static_cast<double>(t.d); }

// Number of q in 1..n with sin(q z / 2) = 0 at z = 2 pi k / d.
std::int64_t vanishing_denominators(std::int64_t n, std::int64_t d) { return n / d; }

// Number of q in 1..n with sin((N+1-q) z / 2) = 0 at z = 2 pi k / d.
std::int64_t vanishing_numerators(std::int64_t total, std::int64_t n, std::int64_t d) {
  return total / d - (total - n) / d;
}

// Appends 2 pi j / period for j >= 1 up to z_max, skipping points where a
// denominator of the sine product vanishes.
void collect_unity_family(std::int64_t period, std::int64_t n, double z_max, std::vector<double>& out) {
  for (std::int64_t j = 1;; ++j) {
    const Turn t = reduce(j, period);
    const double z = to_z(t);
    if (z > z_max) break;
    if (vanishing_denominators(n, t.d) > 0) continue;
    out.push_back(z);
  }
}

void require_positive_range(double z_max, const char* what) {
  if (!(z_max > 0.0)) throw DomainError(std::string(what) + " requires z_max > 0");
}

double chain_spread(const PathCount& pc) {
  return static_cast<double>(pc.forward()) * static_cast<double>(pc.backward()) *
         static_cast<double>(pc.total() + 1);
}

}  // namespace

std::vector<double> zero_locations(PathCount pc, double z_max) {
  require_positive_range(z_max, "zero_locations");
  const std::int64_t total = pc.total();
  const std::int64_t n = pc.forward();
  std::set<Turn, TurnLess> found;
  for (std::int64_t q = 1; q <= n; ++q) {
    const std::int64_t period = total + 1 - q;
    for (std::int64_t j = 1;; ++j) {
      const Turn t = reduce(j, period);
      if (to_z(t) > z_max) break;
      if (vanishing_numerators(total, n, t.d) > vanishing_denominators(n, t.d)) found.insert(t);
    }
  }
  std::vector<double> zeros;
  zeros.reserve(found.size());
  for (const Turn& t : found) zeros.push_back(to_z(t));
  return zeros;
}

UnitModulusPoints unit_modulus_points(PathCount pc, double z_max, bool include_family_b) {
  require_positive_range(z_max, "unit_modulus_points");
  const std::int64_t n = pc.forward();
  if (include_family_b && pc.backward() == 0) {
    throw DomainError("unit_modulus_points: family B needs N - n > 0 (got n = N = " +
                      std::to_string(pc.total()) + ")");
  }
  UnitModulusPoints points;
  collect_unity_family(pc.total() + 1, n, z_max, points.family_a);
  if (include_family_b) collect_unity_family(pc.backward(), n, z_max, points.family_b);
  return points;
}

std::vector<SubsidiaryMaximum> subsidiary_maxima(PathCount pc, std::int64_t m_max, double ratio_threshold) {
  if (m_max < 1) throw DomainError("subsidiary_maxima requires m_max >= 1");
  const auto n = static_cast<double>(pc.forward());
  const auto n_plus_1 = static_cast<double>(pc.total() + 1);
  std::vector<SubsidiaryMaximum> out;
  out.reserve(static_cast<std::size_t>(m_max));
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const double z_m = static_cast<double>(2 * m + 1) * kPi / n_plus_1;
    const double bound = n * std::log(2.0 / z_m) - std::lgamma(n + 1.0);
    // n = 0 has no denominators, so the small-denominator condition holds trivially.
    const bool valid = pc.forward() == 0 || z_m <= ratio_threshold * 4.0 * kPi / n;
    out.push_back({m, z_m, bound, valid});
  }
  return out;
}

double principal_quadratic_factor(PathCount pc, double eps) { return 1.0 - eps * eps * chain_spread(pc) / 24.0; }

double subsidiary_quadratic_factor(PathCount pc, double eps) { return 1.0 - eps * eps * chain_spread(pc) / 8.0; }

double quadratic_model_principal(PathCount pc, double eps) {
  return std::exp(log_binomial(pc.total(), pc.forward())) * principal_quadratic_factor(pc, eps);
}

double quadratic_model_subsidiary(PathCount pc, std::int64_t m, double eps) {
  if (m < 1) throw DomainError("quadratic_model_subsidiary requires m >= 1");
  const auto n = static_cast<double>(pc.forward());
  const double z_m = static_cast<double>(2 * m + 1) * kPi / static_cast<double>(pc.total() + 1);
  const double peak = std::exp(n * std::log(2.0 / z_m) - std::lgamma(n + 1.0));
  return peak * subsidiary_quadratic_factor(pc, eps);
}

bool quadratic_model_in_range(PathCount pc, double eps) {
  return std::abs(eps) <= 0.5 * kPi / static_cast<double>(pc.total() + 1);
}

PeakWidths peak_widths(PathCount pc) {
  const std::int64_t n = pc.forward();
  if (n == 0 || n == pc.total()) {
    throw DomainError("peak_widths requires 1 <= n <= N - 1 (got N = " + std::to_string(pc.total()) +
                      ", n = " + std::to_string(n) + ")");
  }
  const double spread = chain_spread(pc);
  const auto k = static_cast<double>(std::min(n, pc.backward()));
  const double scale = std::sqrt(k) * static_cast<double>(pc.total());
  return {std::sqrt(24.0 / spread), std::sqrt(8.0 / spread), 4.9 / scale, 2.8 / scale};
}

Extremum locate_extremum_numeric(PathCount pc, std::pair<double, double> bracket, PeakObjective objective) {
  auto [lo, hi] = bracket;
  if (!(lo < hi)) throw BracketError("locate_extremum_numeric: bracket must satisfy lo < hi");
  if (hi < 0.0) throw DomainError("locate_extremum_numeric: bracket must reach z >= 0");
  if (lo <= 0.0) return {0.0, log_binomial(pc.total(), pc.forward())};

  const auto n = static_cast<double>(pc.forward());
  auto log_modulus = [&](double z) { return interference_product(pc, PhaseArg(z)).log_mag(); };
  auto score = [&](double z) {
    const double lm = log_modulus(z);
    return objective == PeakObjective::kScaled ? lm + n * std::log(z) : lm;
  };

  const double mid = 0.5 * (lo + hi);
  const double f_mid = score(mid);
  if (score(lo) > f_mid && score(hi) > f_mid) {
    throw BracketError("locate_extremum_numeric: both bracket ends exceed the midpoint; no single maximum");
  }

  const double tol = 1e-4 * kPi / static_cast<double>(pc.total() + 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = score(c);
  double fd = score(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = score(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = score(d);
    }
  }
  const double z_peak = 0.5 * (a + b);
  return {z_peak, log_modulus(z_peak)};
}

Extremum locate_subsidiary_maximum(PathCount pc, std::int64_t m, PeakObjective objective) {
  if (m < 1) throw DomainError("locate_subsidiary_maximum requires m >= 1");
  if (pc.total() < 1) throw DomainError("locate_subsidiary_maximum requires N >= 1");
  const double spacing = kPi / static_cast<double>(pc.total() + 1);
  const double z_m = static_cast<double>(2 * m + 1) * spacing;
  const double first_zero = 2.0 * kPi / static_cast<double>(pc.total());
  return locate_extremum_numeric(pc, {std::max(z_m - spacing, first_zero), z_m + spacing}, objective);
}

FeatureReport analyze_features(PathCount pc, double z_max, std::int64_t m_max, double ratio_threshold) {
  require_positive_range(z_max, "analyze_features");
  if (m_max < 1) throw DomainError("analyze_features requires m_max >= 1");
  FeatureReport report;
  // I is identically 1 when all steps point the same way.
  if (pc.forward() == 0 || pc.backward() == 0) return report;
  report.zeros = zero_locations(pc, z_max);
  auto unity = unit_modulus_points(pc, z_max);
  report.unity_points_a = std::move(unity.family_a);
  report.unity_points_b = std::move(unity.family_b);
  report.subsidiary = subsidiary_maxima(pc, m_max, ratio_threshold);
  report.widths = peak_widths(pc);
  return report;
}

}  // namespace bievo
