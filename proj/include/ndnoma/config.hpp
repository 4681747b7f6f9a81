#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ndnoma/uplink.hpp"

namespace ndnoma::harness {

enum class Scheme { kUplink, kDownlink, kOmaNoiseMod, kPdNomaComparison };

std::string_view scheme_name(Scheme s);
/// Throws ConfigError for unknown names.
Scheme parse_scheme(std::string_view name);

std::string_view threshold_name(ThresholdRule r);
ThresholdRule parse_threshold(std::string_view name);

/// One sweep: the Cartesian product k_db_list x n_list x x_db_grid.
///
/// x_db_grid holds delta in dB for the ND-NOMA and OMA schemes and gamma_bar
/// in dB for pdnoma-comparison. A K of -inf dB is Rayleigh fading.
struct SweepConfig {
  Scheme scheme = Scheme::kUplink;
  std::vector<double> k_db_list{5.0, 10.0};
  std::vector<std::size_t> n_list{50, 100};
  std::vector<double> x_db_grid;
  double alpha = 10.0;
  double p_dbm = 30.0;
  double beta = 0.01;
  double psi = 0.5;
  double rho_far = 0.8;
  ThresholdRule threshold = ThresholdRule::kEqualError;
  std::uint64_t bits_per_point = 100000;
  std::uint64_t j_points = 100000;
  std::uint64_t master_seed = 1;
  int workers = 0;
  bool record_timing = false;

  /// Throws ConfigError when a grid is empty or a count is below its floor.
  void validate() const;
  double p_watts() const;
};

inline constexpr std::uint64_t kMinBitsPerPoint = 10000;

/// Parses `key = value` lines; lists are comma separated, `#` starts a comment.
///
/// Keys: scheme, k_db, n, delta_db, gamma_bar_db, alpha, p_dbm, beta, psi,
/// rho_far, threshold, bits_per_point, j_points, seed, workers, record_timing.
/// k_db accepts `rayleigh` or `-inf` for K = 0. For pdnoma-comparison the
/// defaults for k_db and n become {rayleigh} and {150}.
SweepConfig parse_config(std::string_view text);
SweepConfig load_config(const std::filesystem::path& path);

/// Parses one K value in dB, accepting `rayleigh` and `-inf`.
double parse_k_db(std::string_view token);

}  // namespace ndnoma::harness
