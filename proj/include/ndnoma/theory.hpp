#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "ndnoma/channel.hpp"

namespace ndnoma {

/// Monte Carlo estimate of an unconditional bit error probability.
struct BepEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_points = 0;
};

/// Channel draw for one integration point; arity-1 integrands ignore [1].
using ChannelTuple = std::array<ChannelRealization, 2>;
using ConditionalBep = std::function<double(const ChannelTuple&)>;

inline constexpr std::size_t kMinIntegrationPoints = 1000;
inline constexpr std::size_t kDefaultChunkSize = 4096;

struct IntegrationPlan {
  std::size_t j_points = 0;
  std::uint64_t stream_key = 0;
  int workers = 0;
  std::size_t chunk_size = kDefaultChunkSize;
};

/// Averages cond_bep over J channel tuples drawn from the fading density.
///
/// Importance sampling with the sampling density equal to the channel density
/// itself: every weight g/z collapses to cond_bep(h). The integrand is a
/// parameter so the same integrator serves every detector. std_error is the
/// sample standard deviation of the weights over sqrt(J).
///
/// Chunk c of the J points draws from derive_stream_key(stream_key, {c}), and
/// the per-chunk (count, mean, M2) summaries are merged in chunk order, so the
/// result is bit-identical for any worker count.
///
/// Throws ParameterError for arity outside {1, 2} or J < 1000, and
/// InternalError if cond_bep returns a non-finite value.
BepEstimate unconditional_bep(const ConditionalBep& cond_bep, const FadingModel& model,
                              int arity, const IntegrationPlan& plan);

/// Single-threaded reference for unconditional_bep.
BepEstimate unconditional_bep_serial(const ConditionalBep& cond_bep, const FadingModel& model,
                                     int arity, const IntegrationPlan& plan);

}  // namespace ndnoma
