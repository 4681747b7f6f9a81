#include "ndnoma/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include "ndnoma/errors.hpp"

namespace ndnoma {

ErrorCounts& ErrorCounts::operator+=(const ErrorCounts& other) {
  trials += other.trials;
  errors[0] += other.errors[0];
  errors[1] += other.errors[1];
  return *this;
}

double ErrorCounts::ber(int user) const {
  if (trials == 0) return 0.0;
  return static_cast<double>(errors.at(static_cast<std::size_t>(user))) /
         static_cast<double>(trials);
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NDNOMA_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("NDNOMA_WORKERS must be a positive integer, got '") + env +
                      "'");
  }
  return std::max(1, omp_get_max_threads());
}

namespace {

std::uint64_t block_count(const TrialPlan& plan) {
  if (plan.block_size == 0) throw ParameterError("block size must be >= 1");
  return (plan.trials + plan.block_size - 1) / plan.block_size;
}

ErrorCounts run_block(const BlockKernel& kernel, const TrialPlan& plan, std::uint64_t b) {
  const std::uint64_t first = b * plan.block_size;
  const std::uint64_t n = std::min(plan.block_size, plan.trials - first);
  StreamRng rng(derive_stream_key(plan.stream_key, {b}));
  ErrorCounts c = kernel(n, rng);
  if (c.trials != n) throw InternalError("block kernel reported a wrong trial count");
  return c;
}

}  // namespace

ErrorCounts run_trials_serial(const BlockKernel& kernel, const TrialPlan& plan) {
  ErrorCounts total;
  const std::uint64_t blocks = block_count(plan);
  for (std::uint64_t b = 0; b < blocks; ++b) total += run_block(kernel, plan, b);
  return total;
}

ErrorCounts run_trials(const BlockKernel& kernel, const TrialPlan& plan) {
  const std::uint64_t blocks = block_count(plan);
  std::vector<ErrorCounts> partial(blocks);
  std::exception_ptr failure;
  const int workers = resolve_workers(plan.workers);

#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    try {
      partial[static_cast<std::size_t>(b)] =
          run_block(kernel, plan, static_cast<std::uint64_t>(b));
    } catch (...) {
#pragma omp critical(ndnoma_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  ErrorCounts total;
  for (const ErrorCounts& c : partial) total += c;
  return total;
}

}  // namespace ndnoma
