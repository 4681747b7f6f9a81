#include "ndnoma/theory.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <vector>

#include "ndnoma/errors.hpp"
#include "ndnoma/kernels.hpp"

namespace ndnoma {

namespace {

struct RunningMoments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  void merge(const RunningMoments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(o.count);
    const double d = o.mean - mean;
    const double n = na + nb;
    mean += d * nb / n;
    m2 += o.m2 + d * d * na * nb / n;
    count += o.count;
  }
};

void validate(int arity, const IntegrationPlan& plan) {
  if (arity != 1 && arity != 2) throw ParameterError("channel arity must be 1 or 2");
  if (plan.j_points < kMinIntegrationPoints)
    throw ParameterError("need at least 1000 integration points");
  if (plan.chunk_size == 0) throw ParameterError("chunk size must be >= 1");
}

RunningMoments run_chunk(const ConditionalBep& cond_bep, const FadingModel& model, int arity,
                         const IntegrationPlan& plan, std::size_t chunk) {
  const std::size_t first = chunk * plan.chunk_size;
  const std::size_t n = std::min(plan.chunk_size, plan.j_points - first);
  StreamRng rng(derive_stream_key(plan.stream_key, {chunk}));
  RunningMoments acc;
  ChannelTuple h{};
  for (std::size_t j = 0; j < n; ++j) {
    h[0] = draw_channel(model, rng);
    h[1] = arity == 2 ? draw_channel(model, rng) : ChannelRealization{};
    const double w = cond_bep(h);
    if (!std::isfinite(w)) {
      std::ostringstream msg;
      msg << "conditional BEP returned " << w << " at h1=" << h[0] << " h2=" << h[1]
          << " (point " << first + j << ")";
      throw InternalError(msg.str());
    }
    acc.push(w);
  }
  return acc;
}

BepEstimate finish(const RunningMoments& total) {
  BepEstimate est;
  est.n_points = total.count;
  est.value = total.mean;
  const double n = static_cast<double>(total.count);
  est.std_error = total.count > 1 ? std::sqrt(total.m2 / (n - 1.0) / n) : 0.0;
  return est;
}

std::size_t chunk_count(const IntegrationPlan& plan) {
  return (plan.j_points + plan.chunk_size - 1) / plan.chunk_size;
}

}  // namespace

BepEstimate unconditional_bep_serial(const ConditionalBep& cond_bep, const FadingModel& model,
                                     int arity, const IntegrationPlan& plan) {
  validate(arity, plan);
  RunningMoments total;
  const std::size_t chunks = chunk_count(plan);
  for (std::size_t c = 0; c < chunks; ++c) total.merge(run_chunk(cond_bep, model, arity, plan, c));
  return finish(total);
}

BepEstimate unconditional_bep(const ConditionalBep& cond_bep, const FadingModel& model,
                              int arity, const IntegrationPlan& plan) {
  validate(arity, plan);
  const std::size_t chunks = chunk_count(plan);
  std::vector<RunningMoments> partial(chunks);
  std::exception_ptr failure;
  const int workers = resolve_workers(plan.workers);

#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    try {
      partial[static_cast<std::size_t>(c)] =
          run_chunk(cond_bep, model, arity, plan, static_cast<std::size_t>(c));
    } catch (...) {
#pragma omp critical(ndnoma_theory_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  RunningMoments total;
  for (const RunningMoments& r : partial) total.merge(r);
  return finish(total);
}

}  // namespace ndnoma
