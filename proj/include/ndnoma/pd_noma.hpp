#pragma once

#include <cstdint>

#include "ndnoma/channel.hpp"
#include "ndnoma/kernels.hpp"

/// Downlink power-domain NOMA baseline: binary antipodal symbols superposed with
/// a (rho_far, 1 - rho_far) power split, decoded by the far user directly and by
/// the near user with successive interference cancellation.
namespace ndnoma::pd_noma {

struct Params {
  double gamma_bar = 0.0;  ///< P_tot / sigma_w^2; +inf means noiseless
  double rho_far = 0.0;
  double p_total = 1.0;
  double sigma_w_sq = 0.0;

  double far_amplitude() const;
  double near_amplitude() const;
};

/// Throws ParameterError unless gamma_bar > 0, 0.5 <= rho_far < 1, P_tot > 0.
Params make_params(double gamma_bar, double rho_far, double p_total = 1.0);

/// Bit 0 is sent as +1.
ComplexSample superpose(int bit_far, int bit_near, const Params& p);

int detect_far(ComplexSample y, ChannelRealization h, const Params& p);

struct SicDecisions {
  int far = 0;  ///< first-stage decision on the far user's symbol
  int near = 0;
};
/// Decode far, re-modulate, subtract, decode near.
SicDecisions detect_near_sic(ComplexSample y, ChannelRealization h, const Params& p);

/// Exact conditional BEPs given the user's channel.
double cond_bep_far(ChannelRealization h, const Params& p);
double cond_bep_near(ChannelRealization h, const Params& p);

/// errors[0] = near user, errors[1] = far user; one symbol per trial.
ErrorCounts simulate_block(const Params& p, const FadingModel& fading, std::uint64_t trials,
                           StreamRng& rng);

struct Bers {
  double near = 0.0;
  double far = 0.0;
  double avg = 0.0;
  ErrorCounts counts;
};

Bers pd_noma_downlink_ber(const Params& p, const FadingModel& fading, std::uint64_t trials,
                          std::uint64_t stream_key, int workers = 0);

}  // namespace ndnoma::pd_noma
