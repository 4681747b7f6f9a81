#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "ndnoma/errors.hpp"
#include "ndnoma/kernels.hpp"
#include "ndnoma/theory.hpp"
#include "ndnoma/uplink.hpp"
#include "oracles.hpp"

using namespace ndnoma;

namespace {

const auto kUplink = uplink::derive_params(1.0, 0.01, 10.0, 1.0, 100);

double u2(const ChannelTuple& h) { return uplink::cond_bep_user2(h[0], h[1], kUplink); }

}  // namespace

TEST_CASE("constant integrand is exact") {
  for (int w : {1, 3}) {
    const auto e = unconditional_bep([](const ChannelTuple&) { return 0.3; },
                                     FadingModel::from_db(10.0), 2, {5000, 1, w});
    CHECK(e.value == 0.3);
    CHECK(e.std_error == 0.0);
    CHECK(e.n_points == 5000);
  }
}

TEST_CASE("|h|^2 under Rayleigh integrates to one") {
  const auto e = unconditional_bep([](const ChannelTuple& h) { return std::norm(h[0]); },
                                   FadingModel::rayleigh(), 1, {1000000, 2});
  CHECK(std::abs(e.value - 1.0) <= 3.0 * e.std_error);
}

TEST_CASE("arity-2 draws independent channels") {
  const auto e = unconditional_bep(
      [](const ChannelTuple& h) { return std::real(h[0] * std::conj(h[1])); },
      FadingModel::rayleigh(), 2, {400000, 3});
  CHECK(std::abs(e.value) <= 3.0 * e.std_error);
}

TEST_CASE("argument validation") {
  const ConditionalBep f = [](const ChannelTuple&) { return 0.1; };
  CHECK_THROWS_AS(unconditional_bep(f, FadingModel{}, 0, {5000, 1}), ParameterError);
  CHECK_THROWS_AS(unconditional_bep(f, FadingModel{}, 3, {5000, 1}), ParameterError);
  CHECK_THROWS_AS(unconditional_bep(f, FadingModel{}, 1, {999, 1}), ParameterError);
  const ConditionalBep nan = [](const ChannelTuple&) {
    return std::numeric_limits<double>::quiet_NaN();
  };
  CHECK_THROWS_AS(unconditional_bep(nan, FadingModel{}, 1, {5000, 1}), InternalError);
  CHECK_THROWS_AS(unconditional_bep_serial(nan, FadingModel{}, 1, {5000, 1}), InternalError);
}

TEST_CASE("parallel integrator matches the serial reference") {
  const FadingModel fading = FadingModel::from_db(5.0);
  for (std::size_t chunk : {std::size_t{100}, std::size_t{4096}}) {
    IntegrationPlan plan{30001, 17, 1, chunk};
    const auto ref = unconditional_bep_serial(u2, fading, 2, plan);
    for (int w : {1, 2, 8}) {
      plan.workers = w;
      const auto e = unconditional_bep(u2, fading, 2, plan);
      CHECK(e.value == ref.value);
      CHECK(e.std_error == ref.std_error);
    }
  }
}

TEST_CASE("estimator is unbiased at small J") {
  const FadingModel fading = FadingModel::from_db(5.0);
  const double reference = unconditional_bep(u2, fading, 2, {1000000, 5}).value;
  oracle::Moments reps;
  for (std::uint64_t r = 0; r < 100; ++r)
    reps.add(unconditional_bep(u2, fading, 2, {1000, derive_stream_key(6, {r})}).value);
  CHECK(std::abs(reps.mean - reference) < 3.0 * std::sqrt(reps.var()) / 10.0);
}

TEST_CASE("standard error scales as 1/sqrt(J)") {
  const FadingModel fading = FadingModel::from_db(5.0);
  const auto a = unconditional_bep(u2, fading, 2, {50000, 7});
  const auto b = unconditional_bep(u2, fading, 2, {200000, 8});
  CHECK(a.std_error / b.std_error == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("detector BEP estimates stay within [0, 0.5]") {
  for (double k_db : {-HUGE_VAL, 5.0, 10.0}) {
    for (double delta_db : {-40.0, -10.0, 5.0}) {
      const auto p = uplink::derive_params(1.0, 0.01, 10.0, std::pow(10.0, delta_db / 10), 50);
      const FadingModel fading = FadingModel::from_db(k_db);
      for (int user : {1, 2}) {
        const auto e = unconditional_bep(
            [&](const ChannelTuple& h) {
              return user == 1 ? uplink::cond_bep_user1(h[0], h[1], p)
                               : uplink::cond_bep_user2(h[0], h[1], p);
            },
            fading, 2, {5000, 9});
        CHECK(e.value >= 0.0);
        CHECK(e.value <= 0.5 + 3.0 * e.std_error);
        CHECK(e.std_error >= 0.0);
      }
    }
  }
}

TEST_CASE("theory and end-to-end simulation agree at a Table-II style point") {
  const auto p = uplink::derive_params(1.0, 0.01, 10.0, 0.01, 50);
  const FadingModel fading = FadingModel::from_db(10.0);
  const auto th = unconditional_bep(
      [&](const ChannelTuple& h) { return uplink::cond_bep_user1(h[0], h[1], p); }, fading, 2,
      {1000000, 10});
  const std::uint64_t bits = 400000;
  const auto sim = run_trials(
      [&](std::uint64_t t, StreamRng& rng) { return uplink::simulate_block(p, fading, t, rng); },
      {bits, 11});
  CHECK(th.value > 1e-3);
  CHECK(std::abs(sim.ber(0) - th.value) <=
        oracle::ci99(th.value, static_cast<double>(bits)) + 2.5758 * th.std_error);
}
