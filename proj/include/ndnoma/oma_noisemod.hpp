#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "ndnoma/channel.hpp"
#include "ndnoma/kernels.hpp"
#include "ndnoma/stats.hpp"
#include "ndnoma/uplink.hpp"

/// Orthogonal baseline: the N-sample bit period is split N/2 - N/2 and each user
/// runs classic variance-keyed noise modulation alone in its half.
namespace ndnoma::oma_noisemod {

struct Params {
  double p_total = 0.0;
  double alpha = 0.0;
  double delta = 0.0;
  std::size_t n_total = 0;
  std::size_t slot_samples = 0;  ///< n_total / 2
  ThresholdRule rule = ThresholdRule::kEqualError;

  double sigma_low_sq = 0.0;   ///< 2P / (1 + alpha)
  double sigma_high_sq = 0.0;  ///< alpha * sigma_low_sq
  double sigma_w_sq = 0.0;     ///< sigma_low_sq / delta

  double sigma_sq(int bit) const { return bit == 0 ? sigma_low_sq : sigma_high_sq; }
};

/// Throws ParameterError for odd N, N < 4, or the usual P/alpha/delta ranges.
Params derive_params(double p_total, double alpha, double delta, std::size_t n_total,
                     ThresholdRule rule = ThresholdRule::kEqualError);

SecondOrderStats received_stats(ChannelRealization h, const Params& p, int bit);
int detect(std::span<const ComplexSample> slot, ChannelRealization h, const Params& p);
double cond_bep(ChannelRealization h, const Params& p);

/// Per trial each user sends one bit over its own slot and channel.
ErrorCounts simulate_block(const Params& p, const FadingModel& fading, std::uint64_t trials,
                           StreamRng& rng);

struct UserBers {
  double u1 = 0.0;
  double u2 = 0.0;
  ErrorCounts counts;
};

UserBers oma_noisemod_ber(const Params& p, const FadingModel& fading, std::uint64_t trials,
                          std::uint64_t stream_key, int workers = 0);

}  // namespace ndnoma::oma_noisemod
