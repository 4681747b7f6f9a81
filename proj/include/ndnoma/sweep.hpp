#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ndnoma/config.hpp"

namespace ndnoma::harness {

/// One CSV row: one user (or the two-user average) at one sweep point.
struct SweepResult {
  std::string scheme;
  std::string user;  ///< u1, u2, avg; near, far, avg for pdnoma
  double k_db = 0.0;  ///< -inf for Rayleigh
  std::size_t n = 0;
  double x_db = 0.0;
  std::string x_kind;  ///< delta_db or gamma_bar_db
  double ber_sim = 0.0;
  double ci99 = 0.0;
  double bep_theory = 0.0;
  double bep_se = 0.0;
  std::uint64_t bits = 0;
  double wall_s = 0.0;

  bool operator==(const SweepResult&) const = default;
};

/// Stream purposes; the key of every random stream at a sweep point is
/// derive_stream_key(master_seed, {point_index, purpose, ...}).
enum Purpose : std::uint64_t {
  kPurposeSimulation = 0,
  kPurposeTheoryUser1 = 1,
  kPurposeTheoryUser2 = 2,
  kPurposeTheoryPdNear = 3,
  kPurposeTheoryPdFar = 4,
};

inline constexpr double kZ99 = 2.5758293035489004;

/// Normal-approximation 99% half-width; 3 / bits when errors are 0 or all bits.
double ci_halfwidth_99(std::uint64_t errors, std::uint64_t bits);

/// Runs every point in K -> N -> x order. Deterministic in master_seed for any
/// worker count (wall_s aside, which stays 0 unless record_timing is set).
std::vector<SweepResult> run_sweep(const SweepConfig& cfg);

}  // namespace ndnoma::harness
