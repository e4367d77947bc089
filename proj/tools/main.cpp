#include <CLI11.hpp>
#include <iostream>

#include "bievo/commands.hpp"

using namespace bievo::cli;

int main(int argc, char** argv) {
  CLI::App app{"bievo: interference functions, toy-universe simulation and regime bounds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bievo 0.1.0");

  EvalOptions ev;
  auto* eval = app.add_subcommand("eval", "Evaluate I_{m,n}(z) at one point");
  eval->add_option("--N", ev.total, "Total steps N")->required();
  eval->add_option("--n", ev.forward, "Forward steps n")->required();
  eval->add_option("--z", ev.z, "Phase argument z")->required();
  eval->add_option("--method", ev.method, "sum | product | recurrence")->capture_default_str();

  ScanOptions sc;
  auto* scan = app.add_subcommand("scan", "Tabulate |I|, ln|I|, |Y| or |Y~| over a z grid");
  scan->add_option("--N", sc.totals, "Total step counts")->delimiter(',');
  scan->add_option("--n", sc.forwards, "Forward step counts")->delimiter(',');
  scan->add_option("--zmin", sc.z_min)->capture_default_str();
  scan->add_option("--zmax", sc.z_max)->capture_default_str();
  scan->add_option("--points", sc.points)->capture_default_str();
  scan->add_option("--mode", sc.mode, "raw | log | scaled | rescaled")->capture_default_str();
  scan->add_option("--figure", sc.figure, "Preset grid: 1, 2, 3, 5 or 6");
  scan->add_option("--sigma", sc.sigma, "Gaussian width in z for --figure 5");
  scan->add_option("-o,--out", sc.out, "CSV output path (default stdout)");
  scan->add_option("--threads", sc.threads)->capture_default_str();
  scan->add_option("--config", sc.config, "Config file with a [scan] section");

  FeaturesOptions fe;
  auto* features = app.add_subcommand("features", "Zeros, unit-modulus points, subsidiary maxima and widths");
  features->add_option("--N", fe.total)->capture_default_str();
  features->add_option("--n", fe.forward)->capture_default_str();
  features->add_option("--zmax", fe.z_max, "Upper end of the z range (default 4 pi / n)");
  features->add_option("--mmax", fe.m_max)->capture_default_str();
  features->add_option("--ratio", fe.ratio, "Validity ratio for the subsidiary bound")->capture_default_str();
  features->add_flag("--fig4", fe.fig4, "Write the quadratic-model comparison table");
  features->add_option("-o,--out", fe.out, "CSV output path (default stdout)");

  SimulateOptions si;
  auto* simulate = app.add_subcommand("simulate", "Evolve a toy universe and compare with bievolution");
  simulate->add_option("--config", si.config, "Config file with a [universe] section")->required();
  simulate->add_option("--N", si.steps, "Override the step count");
  simulate->add_option("--report", si.report, "fidelity | components | both")->capture_default_str();
  simulate->add_option("--out", si.out, "Fidelity CSV path (default stdout)");
  simulate->add_option("--components-out", si.components_out, "Components CSV path (default stdout)");
  simulate->add_option("--tol", si.tol, "Tolerance for the nonzero-eigenvalue condition")->capture_default_str();

  RegimeOptions re;
  auto* regime = app.add_subcommand("regime", "Validity window for the step size and total time");
  regime->add_option("--f", re.f, "Fraction f in (0, 1]");
  regime->add_option("--tau", re.tau, "Step size in seconds (default Planck time)");
  regime->add_flag("--strict", re.strict, "Use the stringent lower bound");
  regime->add_option("--duration", re.duration, "Print the f required for this total time (s)");
  regime->add_option("--c", re.c, "Scaled step size tau = c / sqrt(N+1)");
  regime->add_option("--N", re.steps, "Step count for the subsidiary/width ratio");
  regime->add_option("--ratio", re.ratio, "Much-less-than ratio")->capture_default_str();
  regime->add_option("--config", re.config, "Config file with a [regime] section");

  std::string level = "quick";
  auto* verify = app.add_subcommand("verify", "Run built-in consistency checks");
  verify->add_option("level", level, "quick | full")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*eval) return cmd_eval(ev, std::cout, std::cerr);
  if (*scan) return cmd_scan(sc, std::cout, std::cerr);
  if (*features) return cmd_features(fe, std::cout, std::cerr);
  if (*simulate) return cmd_simulate(si, std::cout, std::cerr);
  if (*regime) return cmd_regime(re, std::cout, std::cerr);
  return cmd_verify(level, std::cout, std::cerr);
}
