#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bievo::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitResourceCap = 3,
};

struct EvalOptions {
  std::int64_t total = 0;
  std::int64_t forward = 0;
  double z = 0.0;
  std::string method = "product";  // sum | product | recurrence
};

struct ScanOptions {
  std::vector<std::int64_t> totals;
  std::vector<std::int64_t> forwards;
  double z_min = 0.0;
  double z_max = 0.02;
  int points = 4000;
  std::string mode = "scaled";  // raw | log | scaled | rescaled
  std::optional<int> figure;    // 1, 2, 3, 5, 6
  std::optional<double> sigma;  // Gaussian width in z for figure 5
  std::string out;              // empty: stdout
  int threads = 1;
  std::string config;
};

struct FeaturesOptions {
  std::int64_t total = 8000;
  std::int64_t forward = 1;
  std::optional<double> z_max;
  std::int64_t m_max = 6;
  double ratio = 0.1;
  bool fig4 = false;
  std::string out;
};

struct SimulateOptions {
  std::string config;
  std::optional<int> steps;
  std::string report = "both";  // fidelity | components | both
  std::string out;
  std::string components_out;
  double tol = 1e-9;
};

struct RegimeOptions {
  std::optional<double> f;
  std::optional<double> tau;
  bool strict = false;
  std::optional<double> duration;
  std::optional<double> c;
  std::optional<double> steps;
  double ratio = 0.1;
  std::string config;
};

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err);
int cmd_scan(ScanOptions opt, std::ostream& out, std::ostream& err);
int cmd_features(const FeaturesOptions& opt, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_regime(RegimeOptions opt, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& level, std::ostream& out, std::ostream& err);

}  // namespace bievo::cli
