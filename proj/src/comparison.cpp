#include "ndnoma/comparison.hpp"

#include <cmath>

#include "ndnoma/errors.hpp"

namespace ndnoma::comparison {

downlink::Params nd_params_for(double gamma_bar, const DeltaLink& link) {
  if (!(gamma_bar > 0.0) || !std::isfinite(gamma_bar))
    throw ParameterError("gamma_bar must be finite and > 0");
  const double sigma2_low_sq = 2.0 * (1.0 - link.psi) * link.p_total / (1.0 + link.alpha);
  downlink::Params p = downlink::derive_params(link.p_total, link.psi, link.alpha,
                                               gamma_bar * sigma2_low_sq, link.n_samples);
  // Pin the shared normalisation exactly rather than through delta's rounding.
  p.sigma_w_sq = link.p_total / gamma_bar;
  return p;
}

PointRecord nd_noma_vs_pd_noma_point(double gamma_bar, const DeltaLink& link, double rho_far,
                                     std::uint64_t trials, std::uint64_t stream_key,
                                     int workers, const FadingModel& fading) {
  const downlink::Params nd = nd_params_for(gamma_bar, link);
  const pd_noma::Params pd = pd_noma::make_params(gamma_bar, rho_far, link.p_total);

  PointRecord r;
  r.gamma_bar = gamma_bar;
  r.nd_sigma_w_sq = nd.sigma_w_sq;
  r.pd_sigma_w_sq = pd.sigma_w_sq;

  r.nd_counts = run_trials(
      [&](std::uint64_t n, StreamRng& rng) { return downlink::simulate_block(nd, fading, n, rng); },
      TrialPlan{trials, derive_stream_key(stream_key, {0}), workers});
  r.nd_u1 = r.nd_counts.ber(0);
  r.nd_u2 = r.nd_counts.ber(1);
  r.nd_avg = 0.5 * (r.nd_u1 + r.nd_u2);

  const pd_noma::Bers b =
      pd_noma::pd_noma_downlink_ber(pd, fading, trials, derive_stream_key(stream_key, {1}), workers);
  r.pd_near = b.near;
  r.pd_far = b.far;
  r.pd_avg = b.avg;
  r.pd_counts = b.counts;
  return r;
}

}  // namespace ndnoma::comparison
