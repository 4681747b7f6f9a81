// Serial reference vs OpenMP kernels: bit-trial blocks and the BEP integrator.
// Usage: bench_kernels [trials] [j_points] [workers]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ndnoma/downlink.hpp"
#include "ndnoma/kernels.hpp"
#include "ndnoma/theory.hpp"
#include "ndnoma/uplink.hpp"

using namespace ndnoma;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", name, serial,
              parallel, serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t trials = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
  const std::size_t j = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 200000;
  const int workers = argc > 3 ? std::atoi(argv[3]) : 0;
  std::printf("trials=%llu j=%zu workers=%d\n", static_cast<unsigned long long>(trials), j,
              resolve_workers(workers));

  const FadingModel fading = FadingModel::from_db(10.0);
  const auto up = uplink::derive_params(1.0, 0.01, 10.0, 1.0, 100);
  const auto dn = downlink::derive_params(1.0, downlink::kDefaultPsi, 10.0, 1.0, 100);

  {
    const BlockKernel k = [&](std::uint64_t t, StreamRng& rng) {
      return uplink::simulate_block(up, fading, t, rng);
    };
    const TrialPlan plan{trials, 42, workers};
    ErrorCounts a, b;
    const double ts = seconds([&] { a = run_trials_serial(k, plan); });
    const double tp = seconds([&] { b = run_trials(k, plan); });
    report("uplink bit trials", ts, tp, a == b);
  }
  {
    const BlockKernel k = [&](std::uint64_t t, StreamRng& rng) {
      return downlink::simulate_block(dn, fading, t, rng);
    };
    const TrialPlan plan{trials, 43, workers};
    ErrorCounts a, b;
    const double ts = seconds([&] { a = run_trials_serial(k, plan); });
    const double tp = seconds([&] { b = run_trials(k, plan); });
    report("downlink bit trials", ts, tp, a == b);
  }
  {
    const ConditionalBep f = [&](const ChannelTuple& h) {
      return uplink::cond_bep_user2(h[0], h[1], up);
    };
    const IntegrationPlan plan{j, 44, workers};
    BepEstimate a, b;
    const double ts = seconds([&] { a = unconditional_bep_serial(f, fading, 2, plan); });
    const double tp = seconds([&] { b = unconditional_bep(f, fading, 2, plan); });
    report("uplink U2 BEP integrator", ts, tp, a.value == b.value && a.std_error == b.std_error);
  }
  return 0;
}
