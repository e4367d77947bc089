#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bievo/bievo.hpp"
#include "commands.hpp"
#include "csv.hpp"

namespace bievo::cli {
namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
  std::string name;
  std::function<std::string()> run;  // empty string on success, otherwise the reason
};

std::string fail(const std::string& what, double got, double want) {
  return what + ": got " + format_number(got) + ", want " + format_number(want);
}

double rel(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(std::abs(want), 1.0);
}

// Coefficients of the Gaussian binomial [N choose n]_q via Pascal's q-rule.
std::vector<double> q_binomial(int total, int forward) {
  std::vector<std::vector<std::vector<double>>> t(total + 1);
  for (int a = 0; a <= total; ++a) {
    t[a].resize(a + 1);
    t[a][0] = {1.0};
    t[a][a] = {1.0};
    for (int b = 1; b < a; ++b) {
      const auto& left = t[a - 1][b - 1];
      const auto& right = t[a - 1][b];
      std::vector<double> c(static_cast<std::size_t>(b * (a - b) + 1), 0.0);
      for (std::size_t k = 0; k < left.size(); ++k) c[k] += left[k];
      for (std::size_t k = 0; k < right.size(); ++k) c[k + b] += right[k];
      t[a][b] = std::move(c);
    }
  }
  return t[total][forward];
}

std::complex<double> poly_at(const std::vector<double>& c, double z) {
  std::complex<long double> acc = 0.0L;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const long double ph = -static_cast<long double>(z) * static_cast<long double>(k);
    acc += static_cast<long double>(c[k]) * std::complex<long double>(std::cos(ph), std::sin(ph));
  }
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::vector<Check> quick_checks() {
  std::vector<Check> checks;
  checks.push_back({"interference_triple_oracle", [] {
                      std::mt19937_64 rng(20240601);
                      std::uniform_int_distribution<int> nd(1, 14);
                      std::uniform_real_distribution<double> zd(0.0, 2.0 * kPi);
                      for (int i = 0; i < 300; ++i) {
                        const int total = nd(rng);
                        const int n = std::uniform_int_distribution<int>(0, total)(rng);
                        const double z = zd(rng);
                        const PathCount pc(total, n);
                        const auto s = interference_sum_oracle(pc, PhaseArg(z));
                        const auto r = interference_qrecursion(pc, PhaseArg(z));
                        const auto p = interference_product(pc, PhaseArg(z)).to_complex();
                        const auto q = poly_at(q_binomial(total, n), z);
                        const double e = std::max({rel(s, q), rel(r, q), rel(p, q)});
                        if (e > 1e-9) return fail("N=" + std::to_string(total) + " n=" + std::to_string(n), e, 0.0);
                      }
                      return std::string();
                    }});
  checks.push_back({"interference_conjugation", [] {
                      std::mt19937_64 rng(7);
                      std::uniform_real_distribution<double> zd(0.0, 20.0);
                      for (int i = 0; i < 200; ++i) {
                        const int total = i % 2 ? std::uniform_int_distribution<int>(1, 14)(rng) : std::uniform_int_distribution<int>(15, 300)(rng);
                        const int n = std::uniform_int_distribution<int>(0, total)(rng);
                        const double z = zd(rng);
                        const PathCount pc(total, n);
                        const auto a = interference_product(pc, PhaseArg(-z));
                        const auto b = interference_product(pc, PhaseArg(z)).conj();
                        if (a.is_zero() != b.is_zero()) return std::string("zero mismatch");
                        if (total <= 14) {
                          const auto want = std::conj(interference_sum_oracle(pc, PhaseArg(z)));
                          if (rel(a.to_complex(), want) > 1e-9) return fail("product(-z) vs conj(sum(z))", std::arg(a.to_complex()), std::arg(want));
                        }
                        if (a.is_zero()) continue;
                        if (std::abs(a.log_mag() - b.log_mag()) > 1e-9 * std::max(1.0, std::abs(b.log_mag())) ||
                            std::abs(canonical_phase(a.phase() - b.phase())) > 1e-8) {
                          return fail("N=" + std::to_string(total), a.phase(), b.phase());
                        }
                      }
                      return std::string();
                    }});
  checks.push_back({"interference_scaling_function", [] {
                      const double f = scaling_function(PathCount(8000, 1), PhaseArg(3.0 * kPi / 8001.0)).magnitude();
                      const double want = 2.0 * 8001.0 / (3.0 * kPi);
                      return std::abs(f / want - 1.0) < 1e-12 ? std::string() : fail("F", f, want);
                    }});
  checks.push_back({"toy_binomial_identity", [] {
                      const auto u = ToyUniverse::random(3, 11, 0.2);
                      const int steps = 7;
                      const auto rec = symmetric_evolve(u, steps, true);
                      Vector sum = Vector::Zero(u.dim());
                      for (int n = 0; n <= steps; ++n) {
                        const Vector term = enumerate_S(u, steps - n, n) * u.psi0();
                        if ((term - rec.components[n]).norm() > 1e-9 * std::max(1.0, term.norm())) {
                          return fail("component n=" + std::to_string(n), rec.components[n].norm(), term.norm());
                        }
                        sum += term;
                      }
                      const double e = (sum - rec.state).norm() / rec.state.norm();
                      return e < 1e-12 ? std::string() : fail("sum of S terms", e, 0.0);
                    }});
  checks.push_back({"toy_reordering_third_order", [] {
                      const auto base = ToyUniverse::random(3, 5, 1.0, true);
                      auto err = [&](double tau) {
                        const auto u = base.with_tau(tau);
                        return (reordered_S_approx(u, 3, 2) - enumerate_S(u, 3, 2)).norm();
                      };
                      const double ratio = err(0.02) / err(0.01);
                      return ratio > 6.4 && ratio < 9.6 ? std::string() : fail("error ratio on halving tau", ratio, 8.0);
                    }});
  checks.push_back({"toy_pauli_spectrum", [] {
                      Matrix x(2, 2), y(2, 2);
                      x << 0, 1, 1, 0;
                      y << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
                      Vector psi(2);
                      psi << 1, 0;
                      const ToyUniverse u(x, y, psi, 0.1);
                      const auto sp = commutator_spectrum(u);
                      if (sp.eigenvalues.size() != 2) return std::string("expected two eigenvalues");
                      if (std::abs(sp.eigenvalues[0] + 2.0) > 1e-12 || std::abs(sp.eigenvalues[1] - 2.0) > 1e-12) {
                        return fail("eigenvalues", sp.eigenvalues[0], -2.0);
                      }
                      return check_nonzero_eigenvalue_condition(u, sp, 1e-9) ? std::string()
                                                                             : std::string("condition false");
                    }});
  auto feature_check = [](std::int64_t total) {
    return [total] {
      for (std::int64_t n : {1, 3, 10}) {
        const PathCount pc(total, n);
        const double z_max = 4.0 * kPi / static_cast<double>(n);
        const double cap = log_binomial(total, n);
        for (double z : zero_locations(pc, z_max)) {
          const auto v = interference_product(pc, PhaseArg(z));
          if (!v.is_zero() && v.log_mag() - cap > -20.0) return fail("zero at z=" + format_number(z), v.magnitude(), 0.0);
        }
        const auto u = unit_modulus_points(pc, z_max);
        for (const auto* fam : {&u.family_a, &u.family_b}) {
          for (double z : *fam) {
            const double m = interference_product(pc, PhaseArg(z)).magnitude();
            if (std::abs(m - 1.0) > 1e-8) return fail("unit point z=" + format_number(z), m, 1.0);
          }
        }
      }
      return std::string();
    };
  };
  checks.push_back({"features_N200", feature_check(200)});
  checks.push_back({"features_N2000", feature_check(2000)});
  checks.push_back({"regime_examples", [] {
                      const double ub = upper_bound_total_time(RegimeInputs::fixed(1.0));
                      if (std::abs(ub / (3.0 * kPi / (5e-44 * 1e57)) - 1.0) > 1e-12) return fail("upper bound", ub, 1.885e-13);
                      const double f = required_f_for_duration(3.156e17);
                      if (std::abs(f / 3.57e-61 - 1.0) > 0.01) return fail("required f", f, 3.57e-61);
                      if (!validity_window(RegimeInputs::fixed(1.0), true).conflict) return std::string("no strict conflict");
                      return std::string();
                    }});
  return checks;
}

std::vector<Check> full_checks() {
  std::vector<Check> checks;
  checks.push_back({"features_N8000", [] {
                      for (std::int64_t n : {1, 10, 50}) {
                        const PathCount pc(8000, n);
                        const auto p = locate_subsidiary_maximum(pc, 1);
                        const double z1 = 3.0 * kPi / 8001.0;
                        if (std::abs(p.position / z1 - 1.0) > 0.02) return fail("m=1 peak n=" + std::to_string(n), p.position, z1);
                      }
                      const double v = interference_product(PathCount(8000, 50), PhaseArg(2.0 * kPi / 25.0)).magnitude();
                      if (std::abs(v / 51040.0 - 1.0) > 1e-9) return fail("|I| at 2pi/25", v, 51040.0);
                      // A zero up to the rounding of 2 pi / 40 itself.
                      const double lz = interference_product(PathCount(8000, 50), PhaseArg(2.0 * kPi / 40.0)).log_mag();
                      if (lz > log_binomial(8000, 50) - 300.0) return fail("ln|I| at 2pi/40", lz, -INFINITY);
                      return std::string();
                    }});
  checks.push_back({"rescaled_limit", [] {
                      double prev = 1e9;
                      for (std::int64_t total : {500, 1000, 2000, 4000}) {
                        const PathCount pc(total, 10);
                        const auto p = locate_subsidiary_maximum(pc, 1);
                        const double zt = p.position * static_cast<double>(total + 1);
                        const double d = std::abs(zt / (3.0 * kPi) - 1.0);
                        if (d >= prev) return fail("first peak drift N=" + std::to_string(total), d, prev);
                        prev = d;
                      }
                      return std::string();
                    }});
  return checks;
}

}  // namespace

int cmd_verify(const std::string& level, std::ostream& out, std::ostream& err) {
  if (level != "quick" && level != "full") {
    err << "verify: level must be quick or full\n";
    return kExitUsage;
  }
  auto checks = quick_checks();
  if (level == "full") {
    auto more = full_checks();
    checks.insert(checks.end(), more.begin(), more.end());
  }
  int failed = 0;
  for (const auto& c : checks) {
    std::string reason;
    try {
      reason = c.run();
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    if (reason.empty()) {
      out << "PASS " << c.name << '\n';
    } else {
      ++failed;
      out << "FAIL " << c.name << ": " << reason << '\n';
    }
  }
  out << (checks.size() - failed) << "/" << checks.size() << " checks passed\n";
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace bievo::cli
