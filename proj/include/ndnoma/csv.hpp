#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ndnoma/sweep.hpp"

namespace ndnoma::harness {

inline constexpr std::string_view kCsvHeader =
    "scheme,user,k_db,n,x_db,x_kind,ber_sim,ci99,bep_theory,bep_se,bits,wall_s";

/// Header plus one line per result; doubles use shortest round-trip form and
/// Rayleigh K is written as -inf.
std::string format_csv(const std::vector<SweepResult>& results);

/// Throws ParameterError on an empty result set (nothing is written) and
/// std::runtime_error naming the path if the file cannot be written.
void write_csv(const std::vector<SweepResult>& results, const std::filesystem::path& path);

/// Inverse of format_csv; throws ConfigError on a malformed table.
std::vector<SweepResult> parse_csv(std::string_view text);
std::vector<SweepResult> read_csv(const std::filesystem::path& path);

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string digest(std::string_view text);

}  // namespace ndnoma::harness
