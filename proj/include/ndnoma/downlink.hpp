#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ndnoma/channel.hpp"
#include "ndnoma/kernels.hpp"
#include "ndnoma/stats.hpp"
#include "ndnoma/uplink.hpp"

/// Two-user downlink: the base station sends one noise waveform whose mean
/// carries U1's bit and whose variance carries U2's bit.
namespace ndnoma::downlink {

inline constexpr double kDefaultPsi = 0.5;

struct Params {
  double p_total = 0.0;
  double psi = 0.0;    ///< fraction of P in the mean (dc) component
  double alpha = 0.0;  ///< sigma2_high_sq / sigma2_low_sq
  double delta = 0.0;  ///< sigma2_low_sq / sigma_w_sq
  std::size_t n_samples = 0;
  ThresholdRule rule = ThresholdRule::kEqualError;

  double m1_low = 0.0;  ///< +sqrt(psi P)
  double m1_high = 0.0;
  double sigma2_low_sq = 0.0;
  double sigma2_high_sq = 0.0;
  double sigma_w_sq = 0.0;

  double m1(int bit) const { return bit == 0 ? m1_low : m1_high; }
  double sigma2_sq(int bit) const { return bit == 0 ? sigma2_low_sq : sigma2_high_sq; }
};

/// Throws ParameterError unless P > 0, 0 < psi < 1, alpha > 1, delta > 0, N >= 2.
Params derive_params(double p_total, double psi, double alpha, double delta,
                     std::size_t n_samples, ThresholdRule rule = ThresholdRule::kEqualError);

/// N draws from N(m1(bit1), sigma2_sq(bit2)).
void tx_bs(int bit1, int bit2, const Params& p, StreamRng& rng, std::span<double> out);
std::vector<double> tx_bs(int bit1, int bit2, const Params& p, StreamRng& rng);

/// y_n = h s_n + w_n.
void rx_user_into(std::span<const double> s_bs, ChannelRealization h, double sigma_w_sq,
                  StreamRng& rng, std::span<ComplexSample> out);
Frame rx_user(std::span<const double> s_bs, ChannelRealization h, double sigma_w_sq,
              StreamRng& rng);

int detect_user1(std::span<const ComplexSample> frame, ChannelRealization h1, const Params& p);

SecondOrderStats received_stats(ChannelRealization h2, const Params& p, int bit2);
double variance_threshold(ChannelRealization h2, const Params& p);
int detect_user2(std::span<const ComplexSample> frame, ChannelRealization h2, const Params& p);

double cond_bep_user1(ChannelRealization h1, const Params& p);
double cond_bep_user2(ChannelRealization h2, const Params& p);

/// One frame per trial decodes both users' bits.
ErrorCounts simulate_block(const Params& p, const FadingModel& fading, std::uint64_t trials,
                           StreamRng& rng);
ErrorCounts simulate_fixed_channel(const Params& p, ChannelRealization h1,
                                   ChannelRealization h2, std::uint64_t trials,
                                   StreamRng& rng);

/// Joint-error tally: both users wrong in the same frame.
struct JointCounts {
  ErrorCounts marginal;
  std::uint64_t both_wrong = 0;
};
JointCounts simulate_block_joint(const Params& p, const FadingModel& fading,
                                 std::uint64_t trials, StreamRng& rng);

}  // namespace ndnoma::downlink
