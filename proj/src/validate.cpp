#include "ndnoma/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "ndnoma/channel.hpp"
#include "ndnoma/downlink.hpp"
#include "ndnoma/kernels.hpp"
#include "ndnoma/rng.hpp"
#include "ndnoma/stats.hpp"
#include "ndnoma/theory.hpp"
#include "ndnoma/uplink.hpp"

namespace ndnoma::harness {

namespace {

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

struct Welford {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double var() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
};

uplink::Params table_uplink(double delta_db, std::size_t n) {
  return uplink::derive_params(1.0, 0.01, 10.0, std::pow(10.0, delta_db / 10.0), n);
}

}  // namespace

CheckResult check_quadform_moments(const SuiteOptions& opt) {
  // Known-mean statistic (1/(N-1)) sum |y_n|^2 over correlated (Re, Im) pairs.
  const SecondOrderStats s{0.3, 0.7, 0.2};
  const std::size_t n = 50;
  const auto want = quadform_moments(s, n);
  const double a = std::sqrt(s.var_re);
  const double b = s.cov / a;
  const double c = std::sqrt(s.var_im - b * b);

  StreamRng rng(derive_stream_key(opt.seed, {0xA1}));
  Welford w;
  for (std::size_t f = 0; f < opt.quadform_frames; ++f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z1 = rng.normal();
      const double z2 = rng.normal();
      const double re = a * z1;
      const double im = b * z1 + c * z2;
      acc += re * re + im * im;
    }
    w.add(acc / static_cast<double>(n - 1));
  }
  const double rel_mean = std::abs(w.mean - want.mean) / want.mean;
  const double rel_var = std::abs(w.var() - want.var) / want.var;
  return {"quadform moments vs frames (1%)", rel_mean <= 0.01 && rel_var <= 0.01,
          fmt("frames=%.0f mean rel err %.3g, var rel err %.3g",
              static_cast<double>(opt.quadform_frames), rel_mean, rel_var)};
}

CheckResult check_threshold_identity(const SuiteOptions& opt) {
  StreamRng rng(derive_stream_key(opt.seed, {0xA2}));
  const FadingModel fading = FadingModel::from_db(5.0);
  double worst = 0.0;
  int evaluated = 0;
  for (double delta_db : {-20.0, -5.0, 0.0, 5.0}) {
    for (std::size_t n : {50u, 100u}) {
      const auto up = table_uplink(delta_db, n);
      const auto dn = downlink::derive_params(1.0, downlink::kDefaultPsi, 10.0,
                                              std::pow(10.0, delta_db / 10.0), n);
      for (int trial = 0; trial < 200; ++trial) {
        const auto h1 = draw_channel(fading, rng);
        const auto h2 = draw_channel(fading, rng);
        for (int which = 0; which < 2; ++which) {
          QuadFormMoments m0, m1;
          double gamma;
          if (which == 0) {
            m0 = quadform_moments(uplink::received_stats(h1, h2, up, 0), n);
            m1 = quadform_moments(uplink::received_stats(h1, h2, up, 1), n);
            gamma = uplink::variance_threshold(h1, h2, up);
          } else {
            m0 = quadform_moments(downlink::received_stats(h2, dn, 0), n);
            m1 = quadform_moments(downlink::received_stats(h2, dn, 1), n);
            gamma = downlink::variance_threshold(h2, dn);
          }
          const double e0 = q_function((gamma - m0.mean) / m0.stddev());
          const double e1 = q_function((m1.mean - gamma) / m1.stddev());
          if (e0 == 0.0 && e1 == 0.0) continue;
          worst = std::max(worst, std::abs(e0 - e1) / std::max(e0, e1));
          ++evaluated;
        }
      }
    }
  }
  return {"equal-error threshold identity (1e-12 rel)", worst <= 1e-12 && evaluated > 0,
          fmt("worst relative gap %.3g over %.0f threshold evaluations", worst,
              static_cast<double>(evaluated))};
}

CheckResult check_channel_unit_gain(const SuiteOptions& opt) {
  bool ok = true;
  std::string detail;
  std::uint64_t id = 0;
  for (double k_db : {-HUGE_VAL, 0.0, 5.0, 10.0}) {
    const FadingModel model = FadingModel::from_db(k_db);
    StreamRng rng(derive_stream_key(opt.seed, {0xA3, id++}));
    Welford w;
    for (std::size_t i = 0; i < opt.channel_draws; ++i) w.add(std::norm(draw_channel(model, rng)));
    const double se = std::sqrt(w.var() / static_cast<double>(w.n));
    const double z = (w.mean - 1.0) / se;
    ok = ok && std::abs(z) <= 3.0;
    detail += fmt("K=%g dB: E|h|^2=%.5f (z=%.2f); ", k_db, w.mean, z);
  }
  return {"channel unit gain (3 sigma)", ok, detail};
}

CheckResult check_integrator_constant(const SuiteOptions& opt) {
  const auto est = unconditional_bep([](const ChannelTuple&) { return 0.125; },
                                     FadingModel::from_db(5.0), 2,
                                     IntegrationPlan{kMinIntegrationPoints * 10,
                                                     derive_stream_key(opt.seed, {0xA4}),
                                                     opt.workers});
  const bool ok = est.value == 0.125 && est.std_error == 0.0;
  return {"integrator constant integrand exact", ok,
          fmt("value=%.17g std_error=%.3g", est.value, est.std_error)};
}

CheckResult check_integrator_scaling(const SuiteOptions& opt) {
  const auto p = table_uplink(0.0, 100);
  const ConditionalBep f = [&](const ChannelTuple& h) {
    return uplink::cond_bep_user2(h[0], h[1], p);
  };
  const FadingModel model = FadingModel::from_db(5.0);
  const std::size_t j = opt.integrator_points;
  const auto small = unconditional_bep(
      f, model, 2, {j, derive_stream_key(opt.seed, {0xA5, 0}), opt.workers});
  const auto large = unconditional_bep(
      f, model, 2, {4 * j, derive_stream_key(opt.seed, {0xA5, 1}), opt.workers});
  const double ratio = small.std_error / large.std_error;
  const bool ok = std::abs(ratio - 2.0) <= 0.4;
  return {"integrator 1/sqrt(J) scaling (20%)", ok,
          fmt("se(J)=%.4g se(4J)=%.4g ratio=%.4f", small.std_error, large.std_error, ratio)};
}

CheckResult check_q_function(const SuiteOptions&) {
  double worst_sum = 0.0;
  bool decreasing = true;
  double prev = 1.0;
  for (int i = -400; i <= 400; ++i) {
    const double x = i * 0.1;
    worst_sum = std::max(worst_sum, std::abs(q_function(x) + q_function(-x) - 1.0));
    const double q = q_function(x);
    // Strict where representable: Q rounds to 1 below x = -8 and underflows near 38.
    const bool strict = x > -8.0 && q > 0.0;
    if (i > -400 && (strict ? !(q < prev) : q > prev)) decreasing = false;
    prev = q;
  }
  return {"q_function symmetry and monotonicity", worst_sum <= 1e-12 && decreasing,
          fmt("max |Q(x)+Q(-x)-1| = %.3g", worst_sum)};
}

CheckResult check_parallel_matches_serial(const SuiteOptions& opt) {
  const auto up = table_uplink(-5.0, 50);
  const FadingModel fading = FadingModel::from_db(10.0);
  const BlockKernel kernel = [&](std::uint64_t t, StreamRng& rng) {
    return uplink::simulate_block(up, fading, t, rng);
  };
  const TrialPlan plan{20000, derive_stream_key(opt.seed, {0xA6}), opt.workers};
  const auto serial = run_trials_serial(kernel, plan);
  const auto parallel = run_trials(kernel, plan);

  const ConditionalBep f = [&](const ChannelTuple& h) {
    return uplink::cond_bep_user1(h[0], h[1], up);
  };
  const IntegrationPlan iplan{20000, derive_stream_key(opt.seed, {0xA7}), opt.workers};
  const auto is = unconditional_bep_serial(f, fading, 2, iplan);
  const auto ip = unconditional_bep(f, fading, 2, iplan);
  const bool ok = serial == parallel && is.value == ip.value && is.std_error == ip.std_error;
  return {"parallel kernels match serial reference", ok,
          fmt("errors u1 %.0f/%.0f, u2 %.0f/%.0f", static_cast<double>(serial.errors[0]),
              static_cast<double>(parallel.errors[0]), static_cast<double>(serial.errors[1]),
              static_cast<double>(parallel.errors[1]))};
}

std::vector<CheckResult> run_invariant_suite(const SuiteOptions& opt) {
  return {check_quadform_moments(opt),  check_threshold_identity(opt),
          check_channel_unit_gain(opt), check_integrator_constant(opt),
          check_integrator_scaling(opt), check_q_function(opt),
          check_parallel_matches_serial(opt)};
}

}  // namespace ndnoma::harness
