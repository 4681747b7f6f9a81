#include "ndnoma/uplink.hpp"

#include <cmath>

#include "ndnoma/errors.hpp"

namespace ndnoma::uplink {

Params derive_params(double p_total, double beta, double alpha, double delta,
                     std::size_t n_samples, ThresholdRule rule) {
  if (!(p_total > 0.0) || !std::isfinite(p_total)) throw ParameterError("P must be > 0");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0, 1)");
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be > 1");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ParameterError("delta must be > 0");
  if (n_samples < 2) throw ParameterError("N must be >= 2");

  Params p;
  p.p_total = p_total;
  p.beta = beta;
  p.alpha = alpha;
  p.delta = delta;
  p.n_samples = n_samples;
  p.rule = rule;

  p.sigma1_sq = beta * p_total;
  p.m1_low = std::sqrt((1.0 - beta) * p_total);
  p.m1_high = -p.m1_low;
  p.m2 = 0.0;
  // (low + high) / 2 = P with high = alpha * low.
  p.sigma2_low_sq = 2.0 * p_total / (1.0 + alpha);
  p.sigma2_high_sq = alpha * p.sigma2_low_sq;
  p.sigma_w_sq = p.sigma2_low_sq / delta;
  p.eta = p.sigma1_sq / p.sigma_w_sq;
  return p;
}

void tx_user1(int bit, const Params& p, StreamRng& rng, std::span<double> out) {
  fill_real_gaussian(p.m1(bit), p.sigma1_sq, out, rng);
}

std::vector<double> tx_user1(int bit, const Params& p, StreamRng& rng) {
  std::vector<double> out(p.n_samples);
  tx_user1(bit, p, rng, out);
  return out;
}

void tx_user2(int bit, const Params& p, StreamRng& rng, std::span<double> out) {
  fill_real_gaussian(p.m2, p.sigma2_sq(bit), out, rng);
}

std::vector<double> tx_user2(int bit, const Params& p, StreamRng& rng) {
  std::vector<double> out(p.n_samples);
  tx_user2(bit, p, rng, out);
  return out;
}

void combine_into(std::span<const double> s1, std::span<const double> s2,
                  ChannelRealization h1, ChannelRealization h2, double sigma_w_sq,
                  StreamRng& rng, std::span<ComplexSample> out) {
  if (s1.size() != s2.size() || out.size() != s1.size())
    throw ParameterError("uplink frames must have equal length");
  for (std::size_t n = 0; n < s1.size(); ++n) out[n] = h1 * s1[n] + h2 * s2[n];
  add_complex_noise(sigma_w_sq, out, rng);
}

Observation combine(std::span<const double> s1, std::span<const double> s2,
                    ChannelRealization h1, ChannelRealization h2, double sigma_w_sq,
                    StreamRng& rng) {
  Observation obs{Frame(s1.size()), h1, h2};
  combine_into(s1, s2, h1, h2, sigma_w_sq, rng, obs.frame);
  return obs;
}

int detect_user1(std::span<const ComplexSample> frame, ChannelRealization h1,
                 const Params& p) {
  const ComplexSample ybar = sample_mean(frame);
  // |ybar - h1 m|^2 < |ybar + h1 m|^2  <=>  Re{ybar h1* m} > 0.
  const double stat = std::real(ybar * std::conj(h1)) * p.m1_low;
  return stat < 0.0 ? 1 : 0;  // tie -> 0
}

int detect_user1(const Observation& obs, const Params& p) {
  return detect_user1(obs.frame, obs.h1, p);
}

SecondOrderStats received_stats(ChannelRealization h1, ChannelRealization h2,
                                const Params& p, int bit2) {
  const double s2 = p.sigma2_sq(bit2);
  const double s1 = p.sigma1_sq;
  SecondOrderStats st;
  st.var_re = h1.real() * h1.real() * s1 + h2.real() * h2.real() * s2 + p.sigma_w_sq / 2.0;
  st.var_im = h1.imag() * h1.imag() * s1 + h2.imag() * h2.imag() * s2 + p.sigma_w_sq / 2.0;
  st.cov = h1.real() * h1.imag() * s1 + h2.real() * h2.imag() * s2;
  return st;
}

double variance_threshold(ChannelRealization h1, ChannelRealization h2, const Params& p) {
  if (p.rule == ThresholdRule::kStaticChi) return static_chi(p.delta, p.alpha) * p.sigma_w_sq;
  const QuadFormMoments m0 = quadform_moments(received_stats(h1, h2, p, 0), p.n_samples);
  const QuadFormMoments m1 = quadform_moments(received_stats(h1, h2, p, 1), p.n_samples);
  return equal_error_threshold(m0, m1);
}

int detect_user2(std::span<const ComplexSample> frame, ChannelRealization h1,
                 ChannelRealization h2, const Params& p) {
  return sample_variance(frame) > variance_threshold(h1, h2, p) ? 1 : 0;
}

int detect_user2(const Observation& obs, const Params& p) {
  return detect_user2(obs.frame, obs.h1, obs.h2, p);
}

double cond_bep_user1(ChannelRealization h1, ChannelRealization h2, const Params& p) {
  const double m_sq = p.m1_low * p.m1_low;
  const double m_d = std::norm(h1) * m_sq;
  if (m_d == 0.0) return 0.5;
  const double hr = h1.real();
  const double hi = h1.imag();
  double bep = 0.0;
  for (int k = 0; k < 2; ++k) {
    // Covariance of the sample mean is the per-sample covariance over N.
    const SecondOrderStats st = received_stats(h1, h2, p, k);
    const double n = static_cast<double>(p.n_samples);
    const double var_d =
        m_sq * (hr * hr * st.var_re + hi * hi * st.var_im + 2.0 * hr * hi * st.cov) / n;
    if (!(var_d > 0.0)) throw InternalError("uplink U1 decision variance is not positive");
    bep += 0.5 * q_function(m_d / std::sqrt(var_d));
  }
  return bep;
}

double cond_bep_user2(ChannelRealization h1, ChannelRealization h2, const Params& p) {
  const QuadFormMoments m0 = quadform_moments(received_stats(h1, h2, p, 0), p.n_samples);
  const QuadFormMoments m1 = quadform_moments(received_stats(h1, h2, p, 1), p.n_samples);
  if (p.rule == ThresholdRule::kStaticChi)
    return variance_test_bep(m0, m1, static_chi(p.delta, p.alpha) * p.sigma_w_sq);
  return variance_test_bep(m0, m1);
}

namespace {

template <class ChannelSource>
ErrorCounts run_frames(const Params& p, std::uint64_t trials, StreamRng& rng,
                       ChannelSource&& next_channels) {
  std::vector<double> s1(p.n_samples);
  std::vector<double> s2(p.n_samples);
  Frame y(p.n_samples);
  ErrorCounts c;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto [h1, h2] = next_channels();
    const int b1 = rng.bit();
    const int b2 = rng.bit();
    tx_user1(b1, p, rng, s1);
    tx_user2(b2, p, rng, s2);
    combine_into(s1, s2, h1, h2, p.sigma_w_sq, rng, y);
    c.errors[0] += detect_user1(y, h1, p) != b1;
    c.errors[1] += detect_user2(y, h1, h2, p) != b2;
    ++c.trials;
  }
  return c;
}

}  // namespace

ErrorCounts simulate_block(const Params& p, const FadingModel& fading, std::uint64_t trials,
                           StreamRng& rng) {
  return run_frames(p, trials, rng, [&] {
    const ChannelRealization h1 = draw_channel(fading, rng);
    const ChannelRealization h2 = draw_channel(fading, rng);
    return std::pair{h1, h2};
  });
}

ErrorCounts simulate_fixed_channel(const Params& p, ChannelRealization h1,
                                   ChannelRealization h2, std::uint64_t trials,
                                   StreamRng& rng) {
  return run_frames(p, trials, rng, [&] { return std::pair{h1, h2}; });
}

}  // namespace ndnoma::uplink
