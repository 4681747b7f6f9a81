#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "ndnoma/rng.hpp"

namespace ndnoma {

/// Bit-error tallies for up to two users over a number of trials (one bit per
/// user per trial).
struct ErrorCounts {
  std::uint64_t trials = 0;
  std::array<std::uint64_t, 2> errors{};

  ErrorCounts& operator+=(const ErrorCounts& other);
  double ber(int user) const;
  bool operator==(const ErrorCounts&) const = default;
};

/// Runs `trials` trials of one scheme with the given stream. Must be reentrant.
using BlockKernel = std::function<ErrorCounts(std::uint64_t trials, StreamRng& rng)>;

inline constexpr std::uint64_t kDefaultBlockSize = 1000;

struct TrialPlan {
  std::uint64_t trials = 0;
  std::uint64_t stream_key = 0;
  int workers = 0;  ///< 0: NDNOMA_WORKERS, then the OpenMP default
  std::uint64_t block_size = kDefaultBlockSize;
};

/// Worker count actually used for a request of `requested` (0 = auto).
int resolve_workers(int requested);

/// Reference implementation: blocks in order on the calling thread.
ErrorCounts run_trials_serial(const BlockKernel& kernel, const TrialPlan& plan);

/// OpenMP over blocks. Block b always uses stream derive_stream_key(key, {b}),
/// so the tally equals run_trials_serial for any worker count.
ErrorCounts run_trials(const BlockKernel& kernel, const TrialPlan& plan);

}  // namespace ndnoma
