#include "ndnoma/oma_noisemod.hpp"

#include <cmath>
#include <vector>

#include "ndnoma/errors.hpp"

namespace ndnoma::oma_noisemod {

Params derive_params(double p_total, double alpha, double delta, std::size_t n_total,
                     ThresholdRule rule) {
  if (n_total % 2 != 0) throw ParameterError("OMA-NoiseMod needs an even N");
  if (n_total < 4) throw ParameterError("OMA-NoiseMod needs N >= 4");
  if (!(p_total > 0.0) || !std::isfinite(p_total)) throw ParameterError("P must be > 0");
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be > 1");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ParameterError("delta must be > 0");
  Params p;
  p.p_total = p_total;
  p.alpha = alpha;
  p.delta = delta;
  p.n_total = n_total;
  p.slot_samples = n_total / 2;
  p.rule = rule;
  p.sigma_low_sq = 2.0 * p_total / (1.0 + alpha);
  p.sigma_high_sq = alpha * p.sigma_low_sq;
  p.sigma_w_sq = p.sigma_low_sq / delta;
  return p;
}

SecondOrderStats received_stats(ChannelRealization h, const Params& p, int bit) {
  const double s = p.sigma_sq(bit);
  return {h.real() * h.real() * s + p.sigma_w_sq / 2.0,
          h.imag() * h.imag() * s + p.sigma_w_sq / 2.0, h.real() * h.imag() * s};
}

namespace {

double threshold(ChannelRealization h, const Params& p) {
  if (p.rule == ThresholdRule::kStaticChi) return static_chi(p.delta, p.alpha) * p.sigma_w_sq;
  return equal_error_threshold(quadform_moments(received_stats(h, p, 0), p.slot_samples),
                               quadform_moments(received_stats(h, p, 1), p.slot_samples));
}

}  // namespace

int detect(std::span<const ComplexSample> slot, ChannelRealization h, const Params& p) {
  return sample_variance(slot) > threshold(h, p) ? 1 : 0;
}

double cond_bep(ChannelRealization h, const Params& p) {
  const QuadFormMoments m0 = quadform_moments(received_stats(h, p, 0), p.slot_samples);
  const QuadFormMoments m1 = quadform_moments(received_stats(h, p, 1), p.slot_samples);
  if (p.rule == ThresholdRule::kStaticChi)
    return variance_test_bep(m0, m1, static_chi(p.delta, p.alpha) * p.sigma_w_sq);
  return variance_test_bep(m0, m1);
}

ErrorCounts simulate_block(const Params& p, const FadingModel& fading, std::uint64_t trials,
                           StreamRng& rng) {
  std::vector<double> s(p.slot_samples);
  Frame y(p.slot_samples);
  ErrorCounts c;
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (std::size_t user = 0; user < 2; ++user) {
      const ChannelRealization h = draw_channel(fading, rng);
      const int bit = rng.bit();
      fill_real_gaussian(0.0, p.sigma_sq(bit), s, rng);
      for (std::size_t n = 0; n < s.size(); ++n) y[n] = h * s[n];
      add_complex_noise(p.sigma_w_sq, y, rng);
      c.errors[user] += detect(y, h, p) != bit;
    }
    ++c.trials;
  }
  return c;
}

UserBers oma_noisemod_ber(const Params& p, const FadingModel& fading, std::uint64_t trials,
                          std::uint64_t stream_key, int workers) {
  const ErrorCounts c = run_trials(
      [&](std::uint64_t n, StreamRng& rng) { return simulate_block(p, fading, n, rng); },
      TrialPlan{trials, stream_key, workers});
  return {c.ber(0), c.ber(1), c};
}

}  // namespace ndnoma::oma_noisemod
