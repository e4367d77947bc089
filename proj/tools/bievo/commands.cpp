#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <thread>

#include "bievo/bievo.hpp"
#include "config.hpp"
#include "csv.hpp"

namespace bievo::cli {
namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) { return format_number(v); }

// Maps library exceptions onto the exit-code contract.
int guarded(std::ostream& err, const char* command, bool cap_is_usage, const std::function<int()>& body) {
  try {
    return body();
  } catch (const CapExceeded& e) {
    err << command << ": " << e.what() << '\n';
    return cap_is_usage ? kExitUsage : kExitResourceCap;
  } catch (const ConfigError& e) {
    err << command << ": config " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << command << ": " << e.what() << '\n';
    return kExitUsage;
  }
}

// Either an atomic file or the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) file_ = std::make_unique<AtomicFile>(path);
    stream_ = file_ ? &file_->stream() : &fallback;
  }
  std::ostream& stream() { return *stream_; }
  bool to_file() const { return file_ != nullptr; }
  void commit() {
    if (file_) file_->commit();
  }

 private:
  std::unique_ptr<AtomicFile> file_;
  std::ostream* stream_;
};

std::vector<std::int64_t> parse_int_list(const std::string& text, int line) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      if (item.find_first_not_of(" \t", pos) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(line, "expected a comma list of integers, got '" + text + "'");
    }
  }
  return out;
}

double scan_value(const std::string& mode, const PathCount& pc, double z) {
  if (mode == "raw") {
    const auto v = interference_product(pc, PhaseArg(z));
    return v.is_zero() ? 0.0 : std::exp(v.log_mag() - log_binomial(pc.total(), pc.forward()));
  }
  if (mode == "log") {
    return interference_product(pc, PhaseArg(z)).log_mag() / log_binomial(pc.total(), pc.forward());
  }
  if (mode == "scaled") return std::abs(scaled_interference(pc, PhaseArg(z)));
  return std::abs(rescaled_interference(pc, z));
}

void apply_figure_preset(ScanOptions& opt) {
  const int fig = *opt.figure;
  opt.z_min = 0.0;
  opt.points = 4000;
  switch (fig) {
    case 1:
    case 2:
    case 3:
      opt.totals = {8000};
      opt.forwards = {1, 10, 50};
      opt.z_max = 0.02;
      opt.mode = fig == 1 ? "raw" : fig == 2 ? "log" : "scaled";
      break;
    case 5:
      opt.totals = {8000};
      opt.forwards = {10};
      opt.z_max = 0.005;
      opt.mode = "scaled";
      break;
    case 6:
      opt.totals = {500, 1000, 2000, 4000};
      opt.forwards = {10};
      opt.z_max = 40.0;
      opt.mode = "rescaled";
      break;
    default:
      throw DomainError("--figure must be one of 1, 2, 3, 5, 6");
  }
}

void print_peak_summary(const ScanOptions& opt, std::ostream& out) {
  for (auto total : opt.totals) {
    for (auto n : opt.forwards) {
      if (n == 0 || n >= total) continue;
      const PathCount pc(total, n);
      if (opt.mode == "rescaled") {
        const auto p = locate_subsidiary_maximum(pc, 1);
        const double zt = p.position * static_cast<double>(total + 1);
        out << "first_peak N=" << total << " n=" << n << " z=" << num(zt) << " z/(3pi)=" << num(zt / (3.0 * kPi))
            << " |Y~|=" << num(std::abs(rescaled_interference(pc, zt))) << '\n';
        continue;
      }
      for (std::int64_t m = 1; m <= 6; ++m) {
        const double z_m = static_cast<double>(2 * m + 1) * kPi / static_cast<double>(total + 1);
        if (z_m > opt.z_max) break;
        const auto p = locate_subsidiary_maximum(pc, m);
        out << "peak N=" << total << " n=" << n << " m=" << m << " z=" << num(p.position)
            << " z/z_m=" << num(p.position / z_m) << " |Y|=" << num(std::abs(scaled_interference(pc, PhaseArg(p.position))))
            << '\n';
      }
    }
  }
}

}  // namespace

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  // Caps and domain violations are usage errors here.
  return guarded(err, "eval", true, [&] {
    const PathCount pc(opt.total, opt.forward);
    const PhaseArg z(opt.z);
    std::complex<double> value;
    LogComplex lc;
    if (opt.method == "sum") {
      value = interference_sum_oracle(pc, z);
      lc = LogComplex::from_complex(value);
    } else if (opt.method == "recurrence") {
      value = interference_qrecursion(pc, z);
      lc = LogComplex::from_complex(value);
    } else if (opt.method == "product") {
      lc = interference_product(pc, z);
      value = lc.to_complex();
    } else {
      throw DomainError("--method must be sum, product or recurrence");
    }
    CsvWriter csv(out, {"N", "n", "z", "log_mag", "phase", "magnitude", "re", "im"});
    csv.row({static_cast<double>(opt.total), static_cast<double>(opt.forward), opt.z, lc.log_mag(), lc.phase(),
             lc.magnitude(), value.real(), value.imag()});
    return kExitOk;
  });
}

int cmd_scan(ScanOptions opt, std::ostream& out, std::ostream& err) {
  return guarded(err, "scan", false, [&] {
    if (!opt.config.empty()) {
      const Config cfg = Config::load(opt.config);
      const std::string s = "scan";
      if (cfg.has(s, "N") && opt.totals.empty()) opt.totals = parse_int_list(cfg.get(s, "N").text, cfg.get(s, "N").line);
      if (cfg.has(s, "n") && opt.forwards.empty()) {
        opt.forwards = parse_int_list(cfg.get(s, "n").text, cfg.get(s, "n").line);
      }
      opt.z_min = cfg.number_or(s, "zmin", opt.z_min);
      opt.z_max = cfg.number_or(s, "zmax", opt.z_max);
      opt.points = static_cast<int>(cfg.integer_or(s, "points", opt.points));
      opt.mode = cfg.string_or(s, "mode", opt.mode);
    }
    if (opt.figure) apply_figure_preset(opt);
    if (opt.totals.empty() || opt.forwards.empty()) throw DomainError("scan needs --N and --n (or --figure)");
    if (opt.points < 2) throw DomainError("scan requires points >= 2");
    if (!(opt.z_min >= 0.0)) throw DomainError("scan requires zmin >= 0");
    if (!(opt.z_min < opt.z_max)) throw DomainError("scan requires zmin < zmax");
    if (opt.mode != "raw" && opt.mode != "log" && opt.mode != "scaled" && opt.mode != "rescaled") {
      throw DomainError("--mode must be raw, log, scaled or rescaled");
    }
    if (opt.threads < 1) throw DomainError("--threads must be >= 1");

    std::vector<PathCount> series;
    std::vector<std::string> header{"z"};
    for (auto total : opt.totals) {
      for (auto n : opt.forwards) {
        const PathCount pc(total, n);
        if (opt.mode == "log" && (n == 0 || n == total)) {
          throw DomainError("log mode divides by ln C(N, n), which is 0 for n = 0 or n = N");
        }
        series.push_back(pc);
        header.push_back(opt.mode + "_N" + std::to_string(total) + "_n" + std::to_string(n));
      }
    }
    const bool fig5 = opt.figure == 5;
    double sigma = 0.0;
    if (fig5) {
      sigma = opt.sigma.value_or(3.0 * kPi / static_cast<double>(opt.totals.front() + 1) / 4.0);
      if (!(sigma > 0.0)) throw DomainError("--sigma must be > 0");
      header.push_back("gaussian");
    }

    const auto rows = static_cast<std::size_t>(opt.points);
    const std::size_t cols = header.size();
    std::vector<double> table(rows * cols);
    auto fill = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const double z = opt.z_min + (opt.z_max - opt.z_min) * static_cast<double>(i) / static_cast<double>(rows - 1);
        double* row = &table[i * cols];
        row[0] = z;
        for (std::size_t s = 0; s < series.size(); ++s) row[s + 1] = scan_value(opt.mode, series[s], z);
        if (fig5) row[cols - 1] = std::exp(-0.5 * (z / sigma) * (z / sigma));
      }
    };
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(opt.threads), rows);
    if (workers <= 1) {
      fill(0, rows);
    } else {
      std::vector<std::exception_ptr> errors(workers);
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            fill(rows * w / workers, rows * (w + 1) / workers);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }

    Sink sink(opt.out, out);
    CsvWriter csv(sink.stream(), header);
    std::vector<double> row(cols);
    for (std::size_t i = 0; i < rows; ++i) {
      std::copy_n(&table[i * cols], cols, row.begin());
      csv.row(row);
    }
    sink.commit();
    if (opt.figure && *opt.figure != 1 && *opt.figure != 5) print_peak_summary(opt, sink.to_file() ? out : err);
    return kExitOk;
  });
}

int cmd_features(const FeaturesOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, "features", false, [&] {
    if (opt.fig4) {
      const double b = 0.00025;
      const int points = 501;
      const std::vector<std::int64_t> ns{1, 10, 50};
      const double a = 3.0 * kPi / static_cast<double>(opt.total + 1);
      std::vector<std::string> header{"eps"};
      for (auto n : ns) {
        for (const char* c : {"prin_numeric", "prin_model", "sub_numeric", "sub_model"}) {
          header.push_back(std::string(c) + "_n" + std::to_string(n));
        }
      }
      Sink sink(opt.out, out);
      CsvWriter csv(sink.stream(), header);
      for (int i = 0; i < points; ++i) {
        const double eps = -b + 2.0 * b * i / (points - 1);
        std::vector<double> row{eps};
        for (auto n : ns) {
          const PathCount pc(opt.total, n);
          const auto at = interference_product(pc, PhaseArg(std::abs(eps)));
          row.push_back(std::exp(at.log_mag() - log_binomial(opt.total, n)));
          row.push_back(principal_quadratic_factor(pc, eps));
          row.push_back(std::abs(scaled_interference(pc, PhaseArg(a + eps))));
          row.push_back(subsidiary_quadratic_factor(pc, eps));
        }
        csv.row(row);
      }
      sink.commit();

      std::ostream& report = sink.to_file() ? out : err;
      for (auto n : ns) {
        const PathCount pc(opt.total, n);
        const auto w = peak_widths(pc);
        const auto peak = locate_subsidiary_maximum(pc, 1);
        const double y_peak = std::abs(scaled_interference(pc, PhaseArg(peak.position)));
        double dev_prin = 0.0;
        double dev_sub = 0.0;
        for (int i = 0; i <= 200; ++i) {
          const double t = -1.0 + 2.0 * i / 200.0;
          const double ep = t * std::min(b, w.eps_prin / 2.0);
          const double numeric = std::exp(interference_product(pc, PhaseArg(std::abs(ep))).log_mag() -
                                          log_binomial(opt.total, n));
          dev_prin = std::max(dev_prin, std::abs(principal_quadratic_factor(pc, ep) / numeric - 1.0));
          const double es = t * std::min(b, w.eps_sub / 2.0);
          const double ys = std::abs(scaled_interference(pc, PhaseArg(peak.position + es))) / y_peak;
          dev_sub = std::max(dev_sub, std::abs(subsidiary_quadratic_factor(pc, es) / ys - 1.0));
        }
        report << "fig4 N=" << opt.total << " n=" << n << " principal_max_dev=" << num(dev_prin)
               << " subsidiary_max_dev=" << num(dev_sub) << " peak_z=" << num(peak.position)
               << " within_5pct=" << (dev_prin <= 0.05 && dev_sub <= 0.05 ? "yes" : "no") << '\n';
      }
      return kExitOk;
    }

    const PathCount pc(opt.total, opt.forward);
    const double z_max = opt.z_max.value_or(opt.forward > 0 ? 4.0 * kPi / static_cast<double>(opt.forward) : 1.0);
    const auto rep = analyze_features(pc, z_max, opt.m_max, opt.ratio);
    auto list = [&](const char* name, const std::vector<double>& v) {
      out << name << " (" << v.size() << "):";
      for (std::size_t i = 0; i < std::min<std::size_t>(v.size(), 8); ++i) out << ' ' << num(v[i]);
      if (v.size() > 8) out << " ...";
      out << '\n';
    };
    out << "N = " << pc.total() << ", n = " << pc.forward() << ", m = " << pc.backward() << ", z_max = " << num(z_max)
        << '\n';
    list("zeros", rep.zeros);
    list("unity_points_a", rep.unity_points_a);
    list("unity_points_b", rep.unity_points_b);
    if (rep.widths) {
      const auto& w = *rep.widths;
      out << "eps_prin = " << num(w.eps_prin) << " (bound " << num(w.bound_prin) << ", "
          << (w.prin_within_bound() ? "within" : "exceeds") << ")\n";
      out << "eps_sub = " << num(w.eps_sub) << " (bound " << num(w.bound_sub) << ", "
          << (w.sub_within_bound() ? "within" : "exceeds") << ")\n";
    }

    Sink sink(opt.out, out);
    if (!rep.subsidiary.empty()) {
      if (!sink.to_file()) out << "subsidiary maxima:\n";
      CsvWriter csv(sink.stream(), {"m", "z_m", "bound", "bound_valid", "z_peak", "peak_over_bound"});
      for (const auto& s : rep.subsidiary) {
        double z_peak = std::nan("");
        double ratio = std::nan("");
        try {
          const auto p = locate_subsidiary_maximum(pc, s.index);
          z_peak = p.position;
          ratio = std::abs(scaled_interference(pc, PhaseArg(p.position)));
        } catch (const BracketError&) {
        }
        csv.row({static_cast<double>(s.index), s.position, std::exp(s.bound_log_mag), s.bound_valid ? 1.0 : 0.0, z_peak,
                 ratio});
      }
    }
    sink.commit();
    return kExitOk;
  });
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, "simulate", false, [&] {
    if (opt.report != "fidelity" && opt.report != "components" && opt.report != "both") {
      throw DomainError("--report must be fidelity, components or both");
    }
    const Config cfg = Config::load(opt.config);
    const UniverseConfig uc = read_universe(cfg);
    const int steps = opt.steps.value_or(uc.steps);
    if (steps < 0) throw DomainError("--N must be >= 0");
    const auto& u = uc.universe;
    const bool want_fidelity = opt.report != "components";
    const bool want_components = opt.report != "fidelity";
    if (want_components && steps > kComponentStepCap) {
      throw EnumerationCapExceeded("per-n components are limited to N <= " +
                                   std::to_string(kComponentStepCap) + " (requested N = " + std::to_string(steps) + ")");
    }

    const auto spectrum = commutator_spectrum(u);
    out << "dim = " << u.dim() << ", tau = " << num(u.tau()) << ", N = " << steps << ", band = " << uc.boundary_band
        << '\n';
    out << "commutator eigenvalues:";
    for (std::size_t j = 0; j < spectrum.eigenvalues.size(); ++j) {
      const double lambda = std::abs(spectrum.eigenvalues[j]) <= spectrum.zero_band ? 0.0 : spectrum.eigenvalues[j];
      out << ' ' << num(lambda);
      if (spectrum.multiplicities[j] > 1) out << " (x" << spectrum.multiplicities[j] << ")";
    }
    out << '\n';
    out << "nonzero_eigenvalue_condition = "
        << (check_nonzero_eigenvalue_condition(u, spectrum, opt.tol) ? "true" : "false") << '\n';

    if (want_fidelity) {
      Sink sink(opt.out, out);
      CsvWriter csv(sink.stream(), {"N", "fidelity_deficit", "boundary_mass_fraction", "state_norm", "reference_norm"});
      const bool with_components = steps <= kComponentStepCap;
      for (int k = 0; k <= steps; ++k) {
        const auto e = bievolution_error(u, k, with_components, uc.boundary_band);
        csv.row({static_cast<double>(k), e.fidelity_deficit, e.boundary_mass_fraction.value_or(std::nan("")),
                 e.state_norm, e.reference_norm});
      }
      sink.commit();
    }
    if (want_components) {
      Sink sink(opt.components_out, out);
      CsvWriter csv(sink.stream(), {"n", "component_norm"});
      const auto rec = symmetric_evolve(u, steps, true);
      for (int n = 0; n <= steps; ++n) csv.row({static_cast<double>(n), rec.components[n].stableNorm()});
      sink.commit();
    }
    return kExitOk;
  });
}

int cmd_regime(RegimeOptions opt, std::ostream& out, std::ostream& err) {
  return guarded(err, "regime", false, [&] {
    if (!opt.config.empty()) {
      const Config cfg = Config::load(opt.config);
      const std::string s = "regime";
      if (!opt.f && cfg.has(s, "f")) opt.f = cfg.number(s, "f");
      if (!opt.tau && cfg.has(s, "tau")) opt.tau = cfg.number(s, "tau");
      if (!opt.c && cfg.has(s, "c")) opt.c = cfg.number(s, "c");
      if (!opt.duration && cfg.has(s, "duration")) opt.duration = cfg.number(s, "duration");
      if (cfg.string_or(s, "strict", "false") == "true") opt.strict = true;
    }
    const double f = opt.f.value_or(1.0);
    if (opt.c) {
      if (opt.tau) throw DomainError("--c selects tau = c/sqrt(N+1); do not combine with --tau");
      const auto in = RegimeInputs::scaled(f, *opt.c);
      const auto chk = tau_scaling_check(in, opt.ratio);
      out << "f = " << num(f) << '\n';
      out << "lambda_sd = " << num(in.lambda_sd()) << " s^-2\n";
      out << "tau model = c/sqrt(N+1), c = " << num(*opt.c) << '\n';
      out << "c^2 lambda_sd / (3 pi) = " << num(chk.margin) << (chk.satisfied ? " (satisfied)" : " (NOT satisfied)")
          << '\n';
      out << "first subsidiary maximum at lambda = " << num(chk.first_subsidiary_lambda) << " s^-2\n";
      out << "subsidiary/width ratio = " << num(subsidiary_vs_width_ratio(in, opt.steps.value_or(0.0)))
          << " (independent of N)\n";
    } else {
      const auto in = RegimeInputs::fixed(f, opt.tau.value_or(kPlanckTime));
      const auto w = validity_window(in, opt.strict, opt.ratio);
      out << "f = " << num(f) << '\n';
      out << "lambda_sd = " << num(in.lambda_sd()) << " s^-2\n";
      out << "tau = " << num(in.tau()) << " s\n";
      out << "upper_bound = " << num(w.upper_bound_s) << " s\n";
      out << "window = (" << num(w.lower_bound_s) << " s, " << num(w.upper_bound_s) << " s)\n";
      if (opt.strict) {
        out << "stringent_lower_bound = " << num(w.stringent_lower_bound_s) << " s\n";
        out << (w.conflict ? "CONFLICT" : "no conflict") << ": stringent lower bound vs " << num(opt.ratio)
            << " x upper bound\n";
      }
      if (opt.steps) out << "subsidiary/width ratio at N = " << num(*opt.steps) << ": "
                         << num(subsidiary_vs_width_ratio(in, *opt.steps)) << '\n';
    }
    if (opt.duration) {
      const double tau = opt.tau.value_or(kPlanckTime);
      out << "required_f for T = " << num(*opt.duration) << " s: " << num(required_f_for_duration(*opt.duration, tau))
          << '\n';
    }
    return kExitOk;
  });
}

}  // namespace bievo::cli
