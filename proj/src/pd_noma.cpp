#include "ndnoma/pd_noma.hpp"

#include <cmath>

#include "ndnoma/errors.hpp"
#include "ndnoma/stats.hpp"

namespace ndnoma::pd_noma {

double Params::far_amplitude() const { return std::sqrt(rho_far * p_total); }
double Params::near_amplitude() const { return std::sqrt((1.0 - rho_far) * p_total); }

Params make_params(double gamma_bar, double rho_far, double p_total) {
  if (!(gamma_bar > 0.0)) throw ParameterError("gamma_bar must be > 0");
  if (!(rho_far >= 0.5 && rho_far < 1.0)) throw ParameterError("rho_far must lie in [0.5, 1)");
  if (!(p_total > 0.0) || !std::isfinite(p_total)) throw ParameterError("P_tot must be > 0");
  Params p;
  p.gamma_bar = gamma_bar;
  p.rho_far = rho_far;
  p.p_total = p_total;
  p.sigma_w_sq = std::isinf(gamma_bar) ? 0.0 : p_total / gamma_bar;
  return p;
}

namespace {

double symbol(int bit) { return bit == 0 ? 1.0 : -1.0; }
int decide(double stat) { return stat < 0.0 ? 1 : 0; }

double q_over(double num, double sd) {
  if (sd > 0.0) return q_function(num / sd);
  return num > 0.0 ? 0.0 : (num < 0.0 ? 1.0 : 0.5);
}

}  // namespace

ComplexSample superpose(int bit_far, int bit_near, const Params& p) {
  return {p.far_amplitude() * symbol(bit_far) + p.near_amplitude() * symbol(bit_near), 0.0};
}

int detect_far(ComplexSample y, ChannelRealization h, const Params&) {
  return decide(std::real(std::conj(h) * y));
}

SicDecisions detect_near_sic(ComplexSample y, ChannelRealization h, const Params& p) {
  SicDecisions d;
  d.far = decide(std::real(std::conj(h) * y));
  const ComplexSample residual = y - h * (p.far_amplitude() * symbol(d.far));
  d.near = decide(std::real(std::conj(h) * residual));
  return d;
}

// After matched filtering, the decision variable is |h|(a_f x_f + a_n x_n) + n
// with n ~ N(0, sigma_w^2 / 2). With A = |h| a_f and B = |h| a_n, enumerating
// the regions where each stage errs gives the closed forms below.
double cond_bep_far(ChannelRealization h, const Params& p) {
  const double g = std::abs(h);
  const double a = g * p.far_amplitude();
  const double b = g * p.near_amplitude();
  const double sd = std::sqrt(p.sigma_w_sq / 2.0);
  return 0.5 * (q_over(a + b, sd) + q_over(a - b, sd));
}

double cond_bep_near(ChannelRealization h, const Params& p) {
  const double g = std::abs(h);
  const double a = g * p.far_amplitude();
  const double b = g * p.near_amplitude();
  const double sd = std::sqrt(p.sigma_w_sq / 2.0);
  // Symbols aligned: SIC errs on n < -(2A + B) and on -(A + B) < n < -B.
  const double aligned = q_over(2.0 * a + b, sd) + q_over(b, sd) - q_over(a + b, sd);
  // Symbols opposed: errs on B - 2A < n < B - A and on n > B.
  const double opposed = q_over(a - b, sd) - q_over(2.0 * a - b, sd) + q_over(b, sd);
  return 0.5 * (aligned + opposed);
}

ErrorCounts simulate_block(const Params& p, const FadingModel& fading, std::uint64_t trials,
                           StreamRng& rng) {
  const double sd = std::sqrt(p.sigma_w_sq / 2.0);
  ErrorCounts c;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const int bit_far = rng.bit();
    const int bit_near = rng.bit();
    const ComplexSample x = superpose(bit_far, bit_near, p);
    const ChannelRealization h_near = draw_channel(fading, rng);
    const ChannelRealization h_far = draw_channel(fading, rng);
    const double nr = rng.normal();
    const double ni = rng.normal();
    const ComplexSample y_near = h_near * x + ComplexSample(sd * nr, sd * ni);
    const double fr = rng.normal();
    const double fi = rng.normal();
    const ComplexSample y_far = h_far * x + ComplexSample(sd * fr, sd * fi);
    c.errors[0] += detect_near_sic(y_near, h_near, p).near != bit_near;
    c.errors[1] += detect_far(y_far, h_far, p) != bit_far;
    ++c.trials;
  }
  return c;
}

Bers pd_noma_downlink_ber(const Params& p, const FadingModel& fading, std::uint64_t trials,
                          std::uint64_t stream_key, int workers) {
  const ErrorCounts c = run_trials(
      [&](std::uint64_t n, StreamRng& rng) { return simulate_block(p, fading, n, rng); },
      TrialPlan{trials, stream_key, workers});
  return {c.ber(0), c.ber(1), 0.5 * (c.ber(0) + c.ber(1)), c};
}

}  // namespace ndnoma::pd_noma
