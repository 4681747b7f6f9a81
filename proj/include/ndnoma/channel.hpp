#pragma once

#include "ndnoma/rng.hpp"
#include "ndnoma/stats.hpp"

namespace ndnoma {

/// Unit-gain Rician fading. k_linear = 0 is Rayleigh.
class FadingModel {
 public:
  FadingModel() = default;
  explicit FadingModel(double k_linear);

  static FadingModel rayleigh() { return FadingModel{}; }
  /// K given in dB; -inf maps to Rayleigh.
  static FadingModel from_db(double k_db);

  double k_linear() const { return k_linear_; }
  double k_db() const;
  /// Mean of each real component, sqrt(K / (2 (1 + K))).
  double component_mean() const;
  /// Variance of each real component, 1 / (2 (1 + K)).
  double component_variance() const;

 private:
  double k_linear_ = 0.0;
};

/// Complex baseband channel coefficient, constant over one bit frame.
using ChannelRealization = ComplexSample;

ChannelRealization draw_channel(const FadingModel& model, StreamRng& rng);

}  // namespace ndnoma
