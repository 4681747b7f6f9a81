#include <doctest.h>

#include <cmath>

#include "ndnoma/downlink.hpp"
#include "ndnoma/errors.hpp"
#include "ndnoma/theory.hpp"
#include "ndnoma/uplink.hpp"
#include "oracles.hpp"

using namespace ndnoma;
using namespace ndnoma::downlink;

namespace {

Params table(double delta = 1.0, std::size_t n = 100) {
  return derive_params(1.0, kDefaultPsi, 10.0, delta, n);
}

// U1 sees its mean through h1; the BS variance and the noise both spread it.
double u1_bep_oracle(ChannelRealization h1, const Params& p) {
  const double g = std::norm(h1);
  double sum = 0.0;
  for (double s2 : {p.sigma2_low_sq, p.sigma2_high_sq}) {
    const double var = (g * g * s2 + g * p.sigma_w_sq / 2.0) / static_cast<double>(p.n_samples);
    sum += oracle::q(g * p.m1_low / std::sqrt(var));
  }
  return sum / 2.0;
}

}  // namespace

TEST_CASE("derived parameters") {
  StreamRng rng(1);
  for (int t = 0; t < 1000; ++t) {
    const double P = 0.01 + 5.0 * std::abs(rng.normal());
    const double psi = 0.001 + 0.998 * (rng() >> 11) * 0x1.0p-53;
    const double alpha = 1.001 + 30.0 * std::abs(rng.normal());
    const double delta = std::pow(10.0, 3.0 * rng.normal());
    const auto p = derive_params(P, psi, alpha, delta, 50);
    REQUIRE(p.m1_low * p.m1_low == doctest::Approx(psi * P).epsilon(1e-12));
    REQUIRE(p.m1_high == -p.m1_low);
    REQUIRE((p.sigma2_low_sq + p.sigma2_high_sq) / 2 == doctest::Approx((1 - psi) * P).epsilon(1e-12));
    REQUIRE(p.sigma2_high_sq == doctest::Approx(alpha * p.sigma2_low_sq).epsilon(1e-12));
    REQUIRE(p.sigma_w_sq == doctest::Approx(p.sigma2_low_sq / delta).epsilon(1e-12));
  }
  CHECK_THROWS_AS(derive_params(1.0, 0.0, 10, 1, 100), ParameterError);
  CHECK_THROWS_AS(derive_params(1.0, 1.0, 10, 1, 100), ParameterError);
  CHECK_THROWS_AS(derive_params(1.0, 0.5, 0.5, 1, 100), ParameterError);
  CHECK_THROWS_AS(derive_params(1.0, 0.5, 10, -1, 100), ParameterError);
  CHECK_THROWS_AS(derive_params(1.0, 0.5, 10, 1, 1), ParameterError);
}

TEST_CASE("BS transmission") {
  auto p = table();
  StreamRng rng(2);
  SUBCASE("zero variance gives a constant m1_low frame") {
    p.sigma2_low_sq = 0.0;
    for (double v : tx_bs(0, 0, p, rng)) CHECK(v == p.m1_low);
  }
  SUBCASE("bits (1, 1)") {
    oracle::Moments m;
    for (int f = 0; f < 10000; ++f)
      for (double v : tx_bs(1, 1, p, rng)) m.add(v);
    CHECK(std::abs(m.mean - p.m1_high) <= 4.0 * m.se_mean());
    CHECK(m.var() == doctest::Approx(p.sigma2_high_sq).epsilon(0.01));
  }
  SUBCASE("average power is P") {
    double second = 0.0;
    for (int f = 0; f < 10000; ++f)
      for (double v : tx_bs(rng.bit(), rng.bit(), p, rng)) second += v * v;
    CHECK(second / 1e6 == doctest::Approx(p.p_total).epsilon(0.01));
  }
}

TEST_CASE("user reception") {
  const auto p = table();
  StreamRng rng(3);
  const auto s = tx_bs(0, 1, p, rng);
  const auto y = rx_user(s, {1, 0}, 0.0, rng);
  const auto r = rx_user(s, {0, 1}, 0.0, rng);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(y[i] == ComplexSample(s[i], 0));
    CHECK(r[i] == ComplexSample(0, s[i]));
  }
  const ChannelRealization h{0.6, -0.5};
  double power = 0.0;
  for (int f = 0; f < 10000; ++f)
    for (auto v : rx_user(tx_bs(0, 0, p, rng), h, p.sigma_w_sq, rng))
      power += std::norm(v - h * p.m1_low);
  CHECK(power / 1e6 ==
        doctest::Approx(std::norm(h) * p.sigma2_low_sq + p.sigma_w_sq).epsilon(0.01));
}

TEST_CASE("detectors") {
  const auto p = table();
  const ChannelRealization h{-0.3, 0.8};
  CHECK(detect_user1(Frame(100, h * p.m1_low), h, p) == 0);
  CHECK(detect_user1(Frame(100, h * p.m1_high), h, p) == 1);
  CHECK(detect_user2(Frame(100, {1, 1}), h, p) == 0);
  StreamRng rng(4);
  Frame loud(100);
  add_complex_noise(1e4, loud, rng);
  CHECK(detect_user2(loud, h, p) == 1);
}

TEST_CASE("U1 sign form agrees with the distance form") {
  StreamRng rng(5);
  int disagreements = 0;
  for (int t = 0; t < 100000; ++t) {
    const auto p = derive_params(1.0, 0.5, 10.0, std::pow(10.0, rng.normal()), 4 + t % 40);
    const ChannelRealization h{rng.normal(), rng.normal()};
    const auto y = rx_user(tx_bs(rng.bit(), rng.bit(), p, rng), h, p.sigma_w_sq, rng);
    disagreements += detect_user1(y, h, p) != oracle::nearest_mean(sample_mean(y), h, p.m1_low,
                                                                   p.m1_high);
  }
  CHECK(disagreements == 0);
}

TEST_CASE("equal variances make U2 a coin toss") {
  auto p = table(1.0, 20);
  p.sigma2_high_sq = p.sigma2_low_sq;
  const auto m0 = quadform_moments(received_stats({0.5, 0.5}, p, 0), p.n_samples);
  CHECK(variance_threshold({0.5, 0.5}, p) == doctest::Approx(m0.mean));
  CHECK(cond_bep_user2({0.5, 0.5}, p) == doctest::Approx(0.5));
  StreamRng rng(6);
  const std::uint64_t frames = 100000;
  const auto c = simulate_fixed_channel(p, {0.5, 0.5}, {0.5, 0.5}, frames, rng);
  CHECK(std::abs(c.ber(1) - 0.5) <= oracle::ci99(0.5, frames));
}

TEST_CASE("conditional BEPs") {
  const auto p = table();
  CHECK(cond_bep_user1({0, 0}, p) == 0.5);
  CHECK(cond_bep_user2({0, 0}, p) == doctest::Approx(0.5));

  StreamRng rng(7);
  for (int t = 0; t < 2000; ++t) {
    const auto q = derive_params(1.0, 0.5, 10.0, std::pow(10.0, rng.normal()), 10 + t % 90);
    const ChannelRealization h{rng.normal(), rng.normal()};
    REQUIRE(cond_bep_user1(h, q) == doctest::Approx(u1_bep_oracle(h, q)).epsilon(1e-9));
  }

  SUBCASE("doubling N scales the U1 argument by sqrt(2)") {
    const ChannelRealization h{0.05, 0.02};
    auto p2 = p;
    p2.n_samples = 200;
    const double g = std::norm(h);
    double want = 0.0;
    for (double s2 : {p.sigma2_low_sq, p.sigma2_high_sq})
      want += 0.5 * oracle::q(std::sqrt(2.0) * g * p.m1_low /
                              std::sqrt((g * g * s2 + g * p.sigma_w_sq / 2) / 100.0));
    CHECK(cond_bep_user1(h, p2) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("fixed-channel simulation agrees with the conditional BEPs") {
  const auto p = table();
  const ChannelRealization h1{0.04, 0.02}, h2{0.25, -0.2};
  const std::uint64_t frames = 300000;
  StreamRng rng(8);
  const auto c = simulate_fixed_channel(p, h1, h2, frames, rng);
  const double pb1 = cond_bep_user1(h1, p), pb2 = cond_bep_user2(h2, p);
  CHECK(pb1 > 1e-3);
  CHECK(pb2 > 1e-3);
  CHECK(std::abs(c.ber(0) - pb1) <= oracle::ci99(pb1, frames));
  CHECK(c.ber(1) == doctest::Approx(pb2).epsilon(0.05));
}

TEST_CASE("both bits come out of every frame") {
  const auto p = table(0.1, 50);
  const FadingModel fading = FadingModel::from_db(5.0);
  StreamRng a(9), b(9);
  const auto joint = simulate_block_joint(p, fading, 50000, a);
  CHECK(joint.marginal == simulate_block(p, fading, 50000, b));
  CHECK(joint.both_wrong <= std::min(joint.marginal.errors[0], joint.marginal.errors[1]));
  CHECK(joint.marginal.errors[0] > 0);
  CHECK(joint.marginal.errors[1] > 0);
}

TEST_CASE("downlink U1 is never worse than uplink U1 at matched allocations") {
  // Same m1_low, sigma2 pair and noise: P_d = (2 - beta) P, psi = (1 - beta) / (2 - beta).
  const double beta = 0.01;
  StreamRng rng(10);
  for (int t = 0; t < 2000; ++t) {
    const double delta = std::pow(10.0, rng.normal());
    const auto up = uplink::derive_params(1.0, beta, 10.0, delta, 50);
    const auto dn = derive_params(2.0 - beta, (1.0 - beta) / (2.0 - beta), 10.0, delta, 50);
    REQUIRE(dn.m1_low == doctest::Approx(up.m1_low).epsilon(1e-12));
    REQUIRE(dn.sigma_w_sq == doctest::Approx(up.sigma_w_sq).epsilon(1e-12));
    const ChannelRealization h1{rng.normal(), rng.normal()};
    // U2's variance reaches the uplink receiver through a channel at least as strong.
    const ChannelRealization h2 = h1 * (1.0 + std::abs(rng.normal()));
    REQUIRE(cond_bep_user1(h1, dn) <= uplink::cond_bep_user1(h1, h2, up));
  }
}

TEST_CASE("downlink U1 BEP keeps falling with delta") {
  const FadingModel fading = FadingModel::from_db(10.0);
  double prev = 1.0;
  for (double delta_db : {-40.0, -30.0, -20.0, -10.0, -5.0, 0.0, 5.0}) {
    const auto p = table(std::pow(10.0, delta_db / 10.0), 50);
    const auto est = unconditional_bep(
        [&](const ChannelTuple& h) { return cond_bep_user1(h[0], p); }, fading, 1,
        {20000, 99, 1});
    CAPTURE(delta_db);
    CHECK(est.value < prev);
    prev = est.value;
  }
}
