#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace ndnoma {

/// splitmix64 finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Folds a sequence of identifiers into a single 64-bit stream key.
///
/// The key for a simulation block is
///   derive_stream_key(master_seed, {point_index, purpose, block_index})
/// and is the only input to the block's generator, so any worker may run any
/// block and the result does not depend on scheduling.
std::uint64_t derive_stream_key(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> ids) noexcept;

/// Reproducible random stream. One instance per worker; never shared.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit StreamRng(std::uint64_t key) : engine_(mix64(key)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  /// Standard normal draw.
  double normal() { return gauss_(engine_); }
  /// Uniform bit in {0, 1}.
  int bit() { return static_cast<int>(engine_() >> 63); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace ndnoma
