#pragma once

#include <cstddef>
#include <cstdint>

#include "ndnoma/channel.hpp"
#include "ndnoma/downlink.hpp"
#include "ndnoma/kernels.hpp"
#include "ndnoma/pd_noma.hpp"

/// ND-NOMA downlink against PD-NOMA at a common average SNR gamma_bar, both
/// normalised to P_tot = 1 and sigma_w^2 = 1 / gamma_bar.
namespace ndnoma::comparison {

inline constexpr std::size_t kComparisonSamples = 150;
inline constexpr double kComparisonRhoFar = 0.8;

/// ND-NOMA operating point tied to gamma_bar. The useful variance is the
/// low-state variance fixed by the unit power budget, so delta = gamma_bar *
/// sigma2_low_sq.
struct DeltaLink {
  double psi = downlink::kDefaultPsi;
  double alpha = 10.0;
  std::size_t n_samples = kComparisonSamples;
  double p_total = 1.0;
};

/// Downlink parameters whose sigma_w_sq is exactly p_total / gamma_bar.
downlink::Params nd_params_for(double gamma_bar, const DeltaLink& link);

struct PointRecord {
  double gamma_bar = 0.0;
  double nd_sigma_w_sq = 0.0;
  double pd_sigma_w_sq = 0.0;
  double nd_u1 = 0.0;
  double nd_u2 = 0.0;
  double nd_avg = 0.0;
  double pd_near = 0.0;
  double pd_far = 0.0;
  double pd_avg = 0.0;
  ErrorCounts nd_counts;
  ErrorCounts pd_counts;
};

/// Runs `trials` bits per user for both schemes. ND-NOMA uses
/// derive_stream_key(stream_key, {0}) and PD-NOMA derive_stream_key(stream_key, {1}).
PointRecord nd_noma_vs_pd_noma_point(double gamma_bar, const DeltaLink& link, double rho_far,
                                     std::uint64_t trials, std::uint64_t stream_key,
                                     int workers = 0,
                                     const FadingModel& fading = FadingModel::rayleigh());

}  // namespace ndnoma::comparison
