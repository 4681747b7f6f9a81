#include "ndnoma/sweep.hpp"

#include <chrono>
#include <cmath>

#include "ndnoma/comparison.hpp"
#include "ndnoma/downlink.hpp"
#include "ndnoma/errors.hpp"
#include "ndnoma/oma_noisemod.hpp"
#include "ndnoma/pd_noma.hpp"
#include "ndnoma/theory.hpp"
#include "ndnoma/uplink.hpp"

namespace ndnoma::harness {

namespace {

using Clock = std::chrono::steady_clock;

struct PointContext {
  const SweepConfig& cfg;
  std::uint64_t index;
  double k_db;
  std::size_t n;
  double x_db;
  FadingModel fading;

  std::uint64_t key(std::uint64_t purpose) const {
    return derive_stream_key(cfg.master_seed, {index, purpose});
  }
  BepEstimate integrate(const ConditionalBep& f, int arity, std::uint64_t purpose) const {
    return unconditional_bep(f, fading, arity,
                             IntegrationPlan{cfg.j_points, key(purpose), cfg.workers});
  }
  ErrorCounts simulate(const BlockKernel& kernel) const {
    return run_trials(kernel, TrialPlan{cfg.bits_per_point, key(kPurposeSimulation), cfg.workers});
  }
  SweepResult row(std::string_view scheme, std::string_view user, std::uint64_t errors,
                  std::uint64_t bits, const BepEstimate& theory) const {
    SweepResult r;
    r.scheme = scheme;
    r.user = user;
    r.k_db = k_db;
    r.n = n;
    r.x_db = x_db;
    r.x_kind = cfg.scheme == Scheme::kPdNomaComparison ? "gamma_bar_db" : "delta_db";
    r.ber_sim = static_cast<double>(errors) / static_cast<double>(bits);
    r.ci99 = ci_halfwidth_99(errors, bits);
    r.bep_theory = theory.value;
    r.bep_se = theory.std_error;
    r.bits = cfg.bits_per_point;
    return r;
  }
};

BepEstimate average(const BepEstimate& a, const BepEstimate& b) {
  return {0.5 * (a.value + b.value), 0.5 * std::hypot(a.std_error, b.std_error), a.n_points};
}

void two_user_rows(const PointContext& ctx, std::string_view scheme, const ErrorCounts& c,
                   const BepEstimate& t1, const BepEstimate& t2, std::vector<SweepResult>& out) {
  out.push_back(ctx.row(scheme, "u1", c.errors[0], c.trials, t1));
  out.push_back(ctx.row(scheme, "u2", c.errors[1], c.trials, t2));
}

void run_uplink(const PointContext& ctx, std::vector<SweepResult>& out) {
  const auto& cfg = ctx.cfg;
  const auto p = uplink::derive_params(cfg.p_watts(), cfg.beta, cfg.alpha,
                                       std::pow(10.0, ctx.x_db / 10.0), ctx.n, cfg.threshold);
  const auto counts = ctx.simulate([&](std::uint64_t t, StreamRng& rng) {
    return uplink::simulate_block(p, ctx.fading, t, rng);
  });
  const auto t1 = ctx.integrate(
      [&](const ChannelTuple& h) { return uplink::cond_bep_user1(h[0], h[1], p); }, 2,
      kPurposeTheoryUser1);
  const auto t2 = ctx.integrate(
      [&](const ChannelTuple& h) { return uplink::cond_bep_user2(h[0], h[1], p); }, 2,
      kPurposeTheoryUser2);
  two_user_rows(ctx, "uplink-ndnoma", counts, t1, t2, out);
}

void run_downlink(const PointContext& ctx, std::vector<SweepResult>& out) {
  const auto& cfg = ctx.cfg;
  const auto p = downlink::derive_params(cfg.p_watts(), cfg.psi, cfg.alpha,
                                         std::pow(10.0, ctx.x_db / 10.0), ctx.n, cfg.threshold);
  const auto counts = ctx.simulate([&](std::uint64_t t, StreamRng& rng) {
    return downlink::simulate_block(p, ctx.fading, t, rng);
  });
  const auto t1 = ctx.integrate(
      [&](const ChannelTuple& h) { return downlink::cond_bep_user1(h[0], p); }, 1,
      kPurposeTheoryUser1);
  const auto t2 = ctx.integrate(
      [&](const ChannelTuple& h) { return downlink::cond_bep_user2(h[0], p); }, 1,
      kPurposeTheoryUser2);
  two_user_rows(ctx, "downlink-ndnoma", counts, t1, t2, out);
}

void run_oma(const PointContext& ctx, std::vector<SweepResult>& out) {
  const auto& cfg = ctx.cfg;
  const auto p = oma_noisemod::derive_params(cfg.p_watts(), cfg.alpha,
                                             std::pow(10.0, ctx.x_db / 10.0), ctx.n,
                                             cfg.threshold);
  const auto counts = ctx.simulate([&](std::uint64_t t, StreamRng& rng) {
    return oma_noisemod::simulate_block(p, ctx.fading, t, rng);
  });
  // Both users see the same statistics, but each gets its own integration stream.
  const auto f = [&](const ChannelTuple& h) { return oma_noisemod::cond_bep(h[0], p); };
  const auto t1 = ctx.integrate(f, 1, kPurposeTheoryUser1);
  const auto t2 = ctx.integrate(f, 1, kPurposeTheoryUser2);
  two_user_rows(ctx, "oma-noisemod", counts, t1, t2, out);
}

void run_comparison(const PointContext& ctx, std::vector<SweepResult>& out) {
  const auto& cfg = ctx.cfg;
  const double gamma_bar = std::pow(10.0, ctx.x_db / 10.0);
  comparison::DeltaLink link;
  link.psi = cfg.psi;
  link.alpha = cfg.alpha;
  link.n_samples = ctx.n;
  const auto rec = comparison::nd_noma_vs_pd_noma_point(
      gamma_bar, link, cfg.rho_far, cfg.bits_per_point, ctx.key(kPurposeSimulation), cfg.workers,
      ctx.fading);

  const auto nd = comparison::nd_params_for(gamma_bar, link);
  const auto pd = pd_noma::make_params(gamma_bar, cfg.rho_far, link.p_total);
  const auto nd1 = ctx.integrate(
      [&](const ChannelTuple& h) { return downlink::cond_bep_user1(h[0], nd); }, 1,
      kPurposeTheoryUser1);
  const auto nd2 = ctx.integrate(
      [&](const ChannelTuple& h) { return downlink::cond_bep_user2(h[0], nd); }, 1,
      kPurposeTheoryUser2);
  const auto pdn = ctx.integrate(
      [&](const ChannelTuple& h) { return pd_noma::cond_bep_near(h[0], pd); }, 1,
      kPurposeTheoryPdNear);
  const auto pdf = ctx.integrate(
      [&](const ChannelTuple& h) { return pd_noma::cond_bep_far(h[0], pd); }, 1,
      kPurposeTheoryPdFar);

  const auto& c = rec.nd_counts;
  two_user_rows(ctx, "downlink-ndnoma", c, nd1, nd2, out);
  out.push_back(ctx.row("downlink-ndnoma", "avg", c.errors[0] + c.errors[1], 2 * c.trials,
                        average(nd1, nd2)));

  // PD-NOMA sends one symbol per bit.
  const auto& d = rec.pd_counts;
  const std::size_t first_pd = out.size();
  out.push_back(ctx.row("pdnoma", "near", d.errors[0], d.trials, pdn));
  out.push_back(ctx.row("pdnoma", "far", d.errors[1], d.trials, pdf));
  out.push_back(
      ctx.row("pdnoma", "avg", d.errors[0] + d.errors[1], 2 * d.trials, average(pdn, pdf)));
  for (std::size_t i = first_pd; i < out.size(); ++i) out[i].n = 1;
}

}  // namespace

double ci_halfwidth_99(std::uint64_t errors, std::uint64_t bits) {
  if (bits == 0) throw ParameterError("ci_halfwidth_99: zero bits");
  const double n = static_cast<double>(bits);
  if (errors == 0 || errors >= bits) return 3.0 / n;
  const double p = static_cast<double>(errors) / n;
  return kZ99 * std::sqrt(p * (1.0 - p) / n);
}

std::vector<SweepResult> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<SweepResult> out;
  std::uint64_t index = 0;
  for (double k_db : cfg.k_db_list) {
    const FadingModel fading = FadingModel::from_db(k_db);
    for (std::size_t n : cfg.n_list) {
      for (double x_db : cfg.x_db_grid) {
        const PointContext ctx{cfg, index++, k_db, n, x_db, fading};
        const std::size_t first = out.size();
        const auto start = Clock::now();
        switch (cfg.scheme) {
          case Scheme::kUplink: run_uplink(ctx, out); break;
          case Scheme::kDownlink: run_downlink(ctx, out); break;
          case Scheme::kOmaNoiseMod: run_oma(ctx, out); break;
          case Scheme::kPdNomaComparison: run_comparison(ctx, out); break;
        }
        if (cfg.record_timing) {
          const double wall = std::chrono::duration<double>(Clock::now() - start).count();
          for (std::size_t i = first; i < out.size(); ++i) out[i].wall_s = wall;
        }
      }
    }
  }
  return out;
}

}  // namespace ndnoma::harness
