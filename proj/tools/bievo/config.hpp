#pragma once

// Flat key = value configuration with [universe], [scan] and [regime]
// sections. '#' starts a comment. Matrices and vectors are row-major comma
// lists of complex entries written as "re", "re+imi" or "imi".

#include <complex>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bievo/toy_universe.hpp"

namespace bievo::cli {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

struct ConfigValue {
  std::string text;
  int line;
};

class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& section, const std::string& key) const;
  const ConfigValue& get(const std::string& section, const std::string& key) const;

  std::string string_or(const std::string& section, const std::string& key, const std::string& fallback) const;
  double number(const std::string& section, const std::string& key) const;
  double number_or(const std::string& section, const std::string& key, double fallback) const;
  long long integer(const std::string& section, const std::string& key) const;
  long long integer_or(const std::string& section, const std::string& key, long long fallback) const;
  std::vector<std::complex<double>> complex_list(const std::string& section, const std::string& key) const;

 private:
  std::map<std::string, std::map<std::string, ConfigValue>> sections_;
};

std::complex<double> parse_complex(const std::string& token);

/// Universe plus run parameters read from [universe].
struct UniverseConfig {
  ToyUniverse universe;
  int steps;
  int boundary_band;
};

/// Keys: dim, tau, steps, band, and either seed (random H_F and psi0) or
/// h_forward (d*d entries) with psi0 (d entries). h_backward defaults to the
/// time reverse of h_forward. With seed, psi0 may still be given explicitly.
UniverseConfig read_universe(const Config& cfg);

}  // namespace bievo::cli
