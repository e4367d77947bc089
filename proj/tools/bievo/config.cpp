#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "bievo/errors.hpp"

namespace bievo::cli {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

const std::vector<std::string> kSections = {"universe", "scan", "regime"};

}  // namespace

ConfigError::ConfigError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(line, "unterminated section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), section) == kSections.end()) {
        throw ConfigError(line, "unknown section [" + section + "] (expected universe, scan or regime)");
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value', got '" + s + "'");
    if (section.empty()) throw ConfigError(line, "key outside of a section");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "empty key");
    auto& sec = cfg.sections_[section];
    if (sec.count(key)) throw ConfigError(line, "duplicate key '" + key + "' in [" + section + "]");
    sec[key] = {value, line};
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

const ConfigValue& Config::get(const std::string& section, const std::string& key) const {
  if (!has(section, key)) throw ConfigError(0, "missing key '" + key + "' in [" + section + "]");
  return sections_.at(section).at(key);
}

std::string Config::string_or(const std::string& section, const std::string& key, const std::string& fallback) const {
  return has(section, key) ? get(section, key).text : fallback;
}

double Config::number(const std::string& section, const std::string& key) const {
  const auto& v = get(section, key);
  double out = 0.0;
  if (!parse_double(v.text, out)) throw ConfigError(v.line, "'" + key + "' must be a number, got '" + v.text + "'");
  return out;
}

double Config::number_or(const std::string& section, const std::string& key, double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

long long Config::integer(const std::string& section, const std::string& key) const {
  const auto& v = get(section, key);
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
  if (ec != std::errc() || ptr != v.text.data() + v.text.size()) {
    throw ConfigError(v.line, "'" + key + "' must be an integer, got '" + v.text + "'");
  }
  return out;
}

long long Config::integer_or(const std::string& section, const std::string& key, long long fallback) const {
  return has(section, key) ? integer(section, key) : fallback;
}

std::complex<double> parse_complex(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) throw std::invalid_argument("empty entry");
  if (t.back() != 'i' && t.back() != 'j') {
    double re = 0.0;
    if (!parse_double(t, re)) throw std::invalid_argument("bad number '" + t + "'");
    return {re, 0.0};
  }
  const std::string body = t.substr(0, t.size() - 1);
  // Split at the last sign that is not the leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  double re = 0.0;
  double im = 0.0;
  std::string im_text = split == std::string::npos ? body : body.substr(split);
  if (im_text == "+" || im_text == "-" || im_text.empty()) im_text += "1";
  if (split != std::string::npos && !parse_double(body.substr(0, split), re)) {
    throw std::invalid_argument("bad real part in '" + t + "'");
  }
  if (!parse_double(im_text, im)) throw std::invalid_argument("bad imaginary part in '" + t + "'");
  return {re, im};
}

std::vector<std::complex<double>> Config::complex_list(const std::string& section, const std::string& key) const {
  const auto& v = get(section, key);
  std::vector<std::complex<double>> out;
  std::stringstream ss(v.text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_complex(item));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(v.line, "'" + key + "' entry " + std::to_string(out.size() + 1) + ": " + e.what());
    }
  }
  return out;
}

UniverseConfig read_universe(const Config& cfg) {
  const std::string sec = "universe";
  const auto dim = cfg.integer(sec, "dim");
  if (dim < 1 || dim > kMaxDimension) {
    throw ConfigError(cfg.get(sec, "dim").line, "dim must be in [1, " + std::to_string(kMaxDimension) + "]");
  }
  const double tau = cfg.number(sec, "tau");
  const auto steps = cfg.integer_or(sec, "steps", 10);
  const auto band = cfg.integer_or(sec, "band", 1);
  if (steps < 0) throw ConfigError(cfg.get(sec, "steps").line, "steps must be >= 0");
  if (band < 0) throw ConfigError(cfg.get(sec, "band").line, "band must be >= 0");
  const int d = static_cast<int>(dim);

  auto matrix_from = [&](const std::string& key) {
    const auto entries = cfg.complex_list(sec, key);
    if (entries.size() != static_cast<std::size_t>(d * d)) {
      throw ConfigError(cfg.get(sec, key).line, "'" + key + "' needs " + std::to_string(d * d) + " entries, got " +
                                                    std::to_string(entries.size()));
    }
    Matrix m(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) m(r, c) = entries[static_cast<std::size_t>(r * d + c)];
    return m;
  };
  auto vector_from = [&](const std::string& key) {
    const auto entries = cfg.complex_list(sec, key);
    if (entries.size() != static_cast<std::size_t>(d)) {
      throw ConfigError(cfg.get(sec, key).line,
                        "'" + key + "' needs " + std::to_string(d) + " entries, got " + std::to_string(entries.size()));
    }
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = entries[static_cast<std::size_t>(i)];
    const double norm = v.norm();
    if (norm == 0.0) throw ConfigError(cfg.get(sec, key).line, "'" + key + "' must be nonzero");
    return Vector(v / norm);
  };
  auto line_of = [&](const std::string& key) { return cfg.has(sec, key) ? cfg.get(sec, key).line : 0; };

  try {
    if (cfg.has(sec, "seed")) {
      if (cfg.has(sec, "h_forward")) {
        throw ConfigError(line_of("h_forward"), "give either 'seed' or 'h_forward', not both");
      }
      const auto seed = cfg.integer(sec, "seed");
      const bool unit = cfg.string_or(sec, "unit_norm", "false") == "true";
      auto u = ToyUniverse::random(d, static_cast<std::uint64_t>(seed), tau, unit);
      if (cfg.has(sec, "psi0")) u = u.with_psi0(vector_from("psi0"));
      return {u, static_cast<int>(steps), static_cast<int>(band)};
    }
    Matrix hf = matrix_from("h_forward");
    Vector psi = vector_from("psi0");
    if (cfg.has(sec, "h_backward")) {
      return {ToyUniverse(hf, matrix_from("h_backward"), psi, tau), static_cast<int>(steps), static_cast<int>(band)};
    }
    return {ToyUniverse::with_time_reversal(hf, psi, tau), static_cast<int>(steps), static_cast<int>(band)};
  } catch (const NotHermitian& e) {
    throw ConfigError(line_of("h_forward"), e.what());
  } catch (const DomainError& e) {
    throw ConfigError(line_of("tau"), e.what());
  }
}

}  // namespace bievo::cli
