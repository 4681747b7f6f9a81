#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ndnoma/channel.hpp"
#include "ndnoma/kernels.hpp"
#include "ndnoma/stats.hpp"

namespace ndnoma {

/// How the variance detector places its threshold.
enum class ThresholdRule {
  kEqualError,  ///< channel-aware, equalises both conditional error terms
  kStaticChi,   ///< gamma = chi * sigma_w^2, channel-blind
};

}  // namespace ndnoma

/// Two-user uplink: U1 keys the mean of its noise samples, U2 keys the
/// variance, and the base station sees their faded sum plus receiver noise.
namespace ndnoma::uplink {

struct Params {
  double p_total = 0.0;  ///< per-user average power P
  double beta = 0.0;     ///< fraction of U1 power spent on variance
  double alpha = 0.0;    ///< sigma2_high_sq / sigma2_low_sq
  double delta = 0.0;    ///< sigma2_low_sq / sigma_w_sq
  std::size_t n_samples = 0;
  ThresholdRule rule = ThresholdRule::kEqualError;

  double m1_low = 0.0;  ///< +sqrt((1 - beta) P); m1_high = -m1_low
  double m1_high = 0.0;
  double m2 = 0.0;
  double sigma1_sq = 0.0;
  double sigma2_low_sq = 0.0;
  double sigma2_high_sq = 0.0;
  double sigma_w_sq = 0.0;
  double eta = 0.0;  ///< sigma1_sq / sigma_w_sq

  double m1(int bit) const { return bit == 0 ? m1_low : m1_high; }
  double sigma2_sq(int bit) const { return bit == 0 ? sigma2_low_sq : sigma2_high_sq; }
};

/// Throws ParameterError unless P > 0, 0 < beta < 1, alpha > 1, delta > 0, N >= 2.
Params derive_params(double p_total, double beta, double alpha, double delta,
                     std::size_t n_samples, ThresholdRule rule = ThresholdRule::kEqualError);

void tx_user1(int bit, const Params& p, StreamRng& rng, std::span<double> out);
std::vector<double> tx_user1(int bit, const Params& p, StreamRng& rng);
void tx_user2(int bit, const Params& p, StreamRng& rng, std::span<double> out);
std::vector<double> tx_user2(int bit, const Params& p, StreamRng& rng);

struct Observation {
  Frame frame;
  ChannelRealization h1;
  ChannelRealization h2;
};

/// y_n = h1 s1_n + h2 s2_n + w_n with w_n ~ CN(0, sigma_w_sq).
void combine_into(std::span<const double> s1, std::span<const double> s2,
                  ChannelRealization h1, ChannelRealization h2, double sigma_w_sq,
                  StreamRng& rng, std::span<ComplexSample> out);
Observation combine(std::span<const double> s1, std::span<const double> s2,
                    ChannelRealization h1, ChannelRealization h2, double sigma_w_sq,
                    StreamRng& rng);

/// Minimum-distance mean detector, evaluated as the sign of Re{ybar h1* m1_low}.
int detect_user1(std::span<const ComplexSample> frame, ChannelRealization h1, const Params& p);
int detect_user1(const Observation& obs, const Params& p);

/// Per-sample (Re, Im) covariance of y given U2's bit.
SecondOrderStats received_stats(ChannelRealization h1, ChannelRealization h2,
                                 const Params& p, int bit2);
double variance_threshold(ChannelRealization h1, ChannelRealization h2, const Params& p);

/// Sample-variance threshold detector; bit 1 iff s_y^2 > threshold.
int detect_user2(std::span<const ComplexSample> frame, ChannelRealization h1,
                 ChannelRealization h2, const Params& p);
int detect_user2(const Observation& obs, const Params& p);

/// Conditional BEP of U1 given both channels, averaged over U2's two variances.
double cond_bep_user1(ChannelRealization h1, ChannelRealization h2, const Params& p);
/// Conditional BEP of U2 under the Gaussian approximation of s_y^2.
double cond_bep_user2(ChannelRealization h1, ChannelRealization h2, const Params& p);

/// Runs `trials` frames with fresh channels and bits; errors[0] is U1, errors[1] U2.
ErrorCounts simulate_block(const Params& p, const FadingModel& fading, std::uint64_t trials,
                           StreamRng& rng);

/// Same as simulate_block with both channels held fixed.
ErrorCounts simulate_fixed_channel(const Params& p, ChannelRealization h1,
                                   ChannelRealization h2, std::uint64_t trials,
                                   StreamRng& rng);

}  // namespace ndnoma::uplink
