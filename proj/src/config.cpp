#include "ndnoma/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "ndnoma/comparison.hpp"
#include "ndnoma/errors.hpp"

namespace ndnoma::harness {

namespace {

constexpr std::pair<Scheme, std::string_view> kSchemes[] = {
    {Scheme::kUplink, "uplink-ndnoma"},
    {Scheme::kDownlink, "downlink-ndnoma"},
    {Scheme::kOmaNoiseMod, "oma-noisemod"},
    {Scheme::kPdNomaComparison, "pdnoma-comparison"},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double parse_double(std::string_view key, std::string_view token) {
  token = trim(token);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    throw ConfigError("key '" + std::string(key) + "': not a number: '" + std::string(token) + "'");
  return v;
}

std::uint64_t parse_count(std::string_view key, std::string_view token) {
  token = trim(token);
  // Accept 1e5-style counts as long as they are whole numbers.
  const double v = parse_double(key, token);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e18)
    throw ConfigError("key '" + std::string(key) + "': not a non-negative integer: '" +
                      std::string(token) + "'");
  return static_cast<std::uint64_t>(v);
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> out;
  while (true) {
    const std::size_t comma = value.find(',');
    out.push_back(trim(value.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view token) {
  const std::string t = lower(trim(token));
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError("key '" + std::string(key) + "': expected true/false");
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  for (const auto& [scheme, name] : kSchemes)
    if (scheme == s) return name;
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  const std::string n = lower(trim(name));
  for (const auto& [scheme, label] : kSchemes)
    if (label == n) return scheme;
  throw ConfigError("unknown scheme '" + std::string(name) +
                    "' (expected uplink-ndnoma, downlink-ndnoma, oma-noisemod or "
                    "pdnoma-comparison)");
}

std::string_view threshold_name(ThresholdRule r) {
  return r == ThresholdRule::kEqualError ? "equal-error" : "static-chi";
}

ThresholdRule parse_threshold(std::string_view name) {
  const std::string n = lower(trim(name));
  if (n == "equal-error") return ThresholdRule::kEqualError;
  if (n == "static-chi") return ThresholdRule::kStaticChi;
  throw ConfigError("unknown threshold rule '" + std::string(name) +
                    "' (expected equal-error or static-chi)");
}

double parse_k_db(std::string_view token) {
  const std::string t = lower(trim(token));
  if (t == "rayleigh" || t == "-inf") return -std::numeric_limits<double>::infinity();
  const double v = parse_double("k_db", t);
  if (std::isnan(v) || (std::isinf(v) && v > 0)) throw ConfigError("k_db must be finite or -inf");
  return v;
}

double SweepConfig::p_watts() const { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

void SweepConfig::validate() const {
  if (k_db_list.empty()) throw ConfigError("k_db list is empty");
  if (n_list.empty()) throw ConfigError("n list is empty");
  if (x_db_grid.empty())
    throw ConfigError(scheme == Scheme::kPdNomaComparison ? "gamma_bar_db grid is empty"
                                                           : "delta_db grid is empty");
  if (bits_per_point < kMinBitsPerPoint)
    throw ConfigError("bits_per_point must be >= 10000 for a meaningful confidence interval");
  if (j_points < 1000) throw ConfigError("j_points must be >= 1000");
  if (workers < 0) throw ConfigError("workers must be >= 0");
  for (std::size_t n : n_list) {
    if (n < 2) throw ConfigError("every N must be >= 2");
    if (scheme == Scheme::kOmaNoiseMod && (n % 2 != 0 || n < 4))
      throw ConfigError("oma-noisemod needs even N >= 4");
  }
  for (double x : x_db_grid)
    if (!std::isfinite(x)) throw ConfigError("grid values must be finite dB values");
  if (!(alpha > 1.0)) throw ConfigError("alpha must be > 1");
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
  if (!(psi > 0.0 && psi < 1.0)) throw ConfigError("psi must lie in (0, 1)");
  if (!(rho_far >= 0.5 && rho_far < 1.0)) throw ConfigError("rho_far must lie in [0.5, 1)");
  if (!std::isfinite(p_dbm)) throw ConfigError("p_dbm must be finite");
}

SweepConfig parse_config(std::string_view text) {
  SweepConfig cfg;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second)
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");

    if (key == "scheme") {
      cfg.scheme = parse_scheme(value);
    } else if (key == "k_db") {
      cfg.k_db_list.clear();
      for (std::string_view t : split_list(value)) cfg.k_db_list.push_back(parse_k_db(t));
    } else if (key == "n") {
      cfg.n_list.clear();
      for (std::string_view t : split_list(value)) cfg.n_list.push_back(parse_count(key, t));
    } else if (key == "delta_db" || key == "gamma_bar_db") {
      if (seen.count("delta_db") && seen.count("gamma_bar_db"))
        throw ConfigError("give either delta_db or gamma_bar_db, not both");
      cfg.x_db_grid.clear();
      for (std::string_view t : split_list(value)) cfg.x_db_grid.push_back(parse_double(key, t));
    } else if (key == "alpha") {
      cfg.alpha = parse_double(key, value);
    } else if (key == "p_dbm") {
      cfg.p_dbm = parse_double(key, value);
    } else if (key == "beta") {
      cfg.beta = parse_double(key, value);
    } else if (key == "psi") {
      cfg.psi = parse_double(key, value);
    } else if (key == "rho_far") {
      cfg.rho_far = parse_double(key, value);
    } else if (key == "threshold") {
      cfg.threshold = parse_threshold(value);
    } else if (key == "bits_per_point") {
      cfg.bits_per_point = parse_count(key, value);
    } else if (key == "j_points") {
      cfg.j_points = parse_count(key, value);
    } else if (key == "seed") {
      cfg.master_seed = parse_count(key, value);
    } else if (key == "workers") {
      cfg.workers = static_cast<int>(parse_count(key, value));
    } else if (key == "record_timing") {
      cfg.record_timing = parse_bool(key, value);
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }

  const bool comparison = cfg.scheme == Scheme::kPdNomaComparison;
  if (comparison && seen.count("delta_db"))
    throw ConfigError("pdnoma-comparison sweeps gamma_bar_db, not delta_db");
  if (!comparison && seen.count("gamma_bar_db"))
    throw ConfigError("gamma_bar_db only applies to pdnoma-comparison");
  if (comparison) {
    if (!seen.count("k_db")) cfg.k_db_list = {-std::numeric_limits<double>::infinity()};
    if (!seen.count("n")) cfg.n_list = {comparison::kComparisonSamples};
  }
  cfg.validate();
  return cfg;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace ndnoma::harness
