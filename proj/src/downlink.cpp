#include "ndnoma/downlink.hpp"

#include <cmath>

#include "ndnoma/errors.hpp"

namespace ndnoma::downlink {

Params derive_params(double p_total, double psi, double alpha, double delta,
                     std::size_t n_samples, ThresholdRule rule) {
  if (!(p_total > 0.0) || !std::isfinite(p_total)) throw ParameterError("P must be > 0");
  if (!(psi > 0.0 && psi < 1.0)) throw ParameterError("psi must lie in (0, 1)");
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be > 1");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ParameterError("delta must be > 0");
  if (n_samples < 2) throw ParameterError("N must be >= 2");

  Params p;
  p.p_total = p_total;
  p.psi = psi;
  p.alpha = alpha;
  p.delta = delta;
  p.n_samples = n_samples;
  p.rule = rule;
  p.m1_low = std::sqrt(psi * p_total);
  p.m1_high = -p.m1_low;
  p.sigma2_low_sq = 2.0 * (1.0 - psi) * p_total / (1.0 + alpha);
  p.sigma2_high_sq = alpha * p.sigma2_low_sq;
  p.sigma_w_sq = p.sigma2_low_sq / delta;
  return p;
}

void tx_bs(int bit1, int bit2, const Params& p, StreamRng& rng, std::span<double> out) {
  fill_real_gaussian(p.m1(bit1), p.sigma2_sq(bit2), out, rng);
}

std::vector<double> tx_bs(int bit1, int bit2, const Params& p, StreamRng& rng) {
  std::vector<double> out(p.n_samples);
  tx_bs(bit1, bit2, p, rng, out);
  return out;
}

void rx_user_into(std::span<const double> s_bs, ChannelRealization h, double sigma_w_sq,
                  StreamRng& rng, std::span<ComplexSample> out) {
  if (out.size() != s_bs.size()) throw ParameterError("rx frame length mismatch");
  for (std::size_t n = 0; n < s_bs.size(); ++n) out[n] = h * s_bs[n];
  add_complex_noise(sigma_w_sq, out, rng);
}

Frame rx_user(std::span<const double> s_bs, ChannelRealization h, double sigma_w_sq,
              StreamRng& rng) {
  Frame y(s_bs.size());
  rx_user_into(s_bs, h, sigma_w_sq, rng, y);
  return y;
}

int detect_user1(std::span<const ComplexSample> frame, ChannelRealization h1,
                 const Params& p) {
  const ComplexSample ybar = sample_mean(frame);
  const double stat = std::real(ybar * std::conj(h1)) * p.m1_low;
  return stat < 0.0 ? 1 : 0;
}

SecondOrderStats received_stats(ChannelRealization h2, const Params& p, int bit2) {
  const double s2 = p.sigma2_sq(bit2);
  SecondOrderStats st;
  st.var_re = h2.real() * h2.real() * s2 + p.sigma_w_sq / 2.0;
  st.var_im = h2.imag() * h2.imag() * s2 + p.sigma_w_sq / 2.0;
  st.cov = h2.real() * h2.imag() * s2;
  return st;
}

double variance_threshold(ChannelRealization h2, const Params& p) {
  if (p.rule == ThresholdRule::kStaticChi) return static_chi(p.delta, p.alpha) * p.sigma_w_sq;
  return equal_error_threshold(quadform_moments(received_stats(h2, p, 0), p.n_samples),
                               quadform_moments(received_stats(h2, p, 1), p.n_samples));
}

int detect_user2(std::span<const ComplexSample> frame, ChannelRealization h2,
                 const Params& p) {
  return sample_variance(frame) > variance_threshold(h2, p) ? 1 : 0;
}

double cond_bep_user1(ChannelRealization h1, const Params& p) {
  const double m_sq = p.m1_low * p.m1_low;
  const double m_d = std::norm(h1) * m_sq;
  if (m_d == 0.0) return 0.5;
  const double hr = h1.real();
  const double hi = h1.imag();
  const double n = static_cast<double>(p.n_samples);
  double bep = 0.0;
  for (int k = 0; k < 2; ++k) {
    // Same (Re, Im) structure as U2's statistic, with h1 in place of h2.
    const SecondOrderStats st = received_stats(h1, p, k);
    const double var_d =
        m_sq * (hr * hr * st.var_re + hi * hi * st.var_im + 2.0 * hr * hi * st.cov) / n;
    if (!(var_d > 0.0)) throw InternalError("downlink U1 decision variance is not positive");
    bep += 0.5 * q_function(m_d / std::sqrt(var_d));
  }
  return bep;
}

double cond_bep_user2(ChannelRealization h2, const Params& p) {
  const QuadFormMoments m0 = quadform_moments(received_stats(h2, p, 0), p.n_samples);
  const QuadFormMoments m1 = quadform_moments(received_stats(h2, p, 1), p.n_samples);
  if (p.rule == ThresholdRule::kStaticChi)
    return variance_test_bep(m0, m1, static_chi(p.delta, p.alpha) * p.sigma_w_sq);
  return variance_test_bep(m0, m1);
}

namespace {

template <class ChannelSource>
JointCounts run_frames(const Params& p, std::uint64_t trials, StreamRng& rng,
                       ChannelSource&& next_channels) {
  std::vector<double> s(p.n_samples);
  Frame y1(p.n_samples);
  Frame y2(p.n_samples);
  JointCounts c;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto [h1, h2] = next_channels();
    const int b1 = rng.bit();
    const int b2 = rng.bit();
    tx_bs(b1, b2, p, rng, s);
    rx_user_into(s, h1, p.sigma_w_sq, rng, y1);
    rx_user_into(s, h2, p.sigma_w_sq, rng, y2);
    const bool e1 = detect_user1(y1, h1, p) != b1;
    const bool e2 = detect_user2(y2, h2, p) != b2;
    c.marginal.errors[0] += e1;
    c.marginal.errors[1] += e2;
    c.both_wrong += e1 && e2;
    ++c.marginal.trials;
  }
  return c;
}

}  // namespace

JointCounts simulate_block_joint(const Params& p, const FadingModel& fading,
                                 std::uint64_t trials, StreamRng& rng) {
  return run_frames(p, trials, rng, [&] {
    const ChannelRealization h1 = draw_channel(fading, rng);
    const ChannelRealization h2 = draw_channel(fading, rng);
    return std::pair{h1, h2};
  });
}

ErrorCounts simulate_block(const Params& p, const FadingModel& fading, std::uint64_t trials,
                           StreamRng& rng) {
  return simulate_block_joint(p, fading, trials, rng).marginal;
}

ErrorCounts simulate_fixed_channel(const Params& p, ChannelRealization h1,
                                   ChannelRealization h2, std::uint64_t trials,
                                   StreamRng& rng) {
  return run_frames(p, trials, rng, [&] { return std::pair{h1, h2}; }).marginal;
}

}  // namespace ndnoma::downlink
