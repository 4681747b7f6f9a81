#include "ndnoma/channel.hpp"

#include <cmath>
#include <limits>

#include "ndnoma/errors.hpp"

namespace ndnoma {

FadingModel::FadingModel(double k_linear) : k_linear_(k_linear) {
  if (!(k_linear >= 0.0) || std::isinf(k_linear))
    throw ParameterError("Rician K-factor must be finite and >= 0");
}

FadingModel FadingModel::from_db(double k_db) {
  if (std::isnan(k_db)) throw ParameterError("Rician K in dB is NaN");
  if (std::isinf(k_db) && k_db < 0) return rayleigh();
  return FadingModel(std::pow(10.0, k_db / 10.0));
}

double FadingModel::k_db() const {
  if (k_linear_ == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(k_linear_);
}

double FadingModel::component_mean() const {
  return std::sqrt(k_linear_ / (2.0 * (1.0 + k_linear_)));
}

double FadingModel::component_variance() const { return 1.0 / (2.0 * (1.0 + k_linear_)); }

ChannelRealization draw_channel(const FadingModel& model, StreamRng& rng) {
  const double mean = model.component_mean();
  const double sd = std::sqrt(model.component_variance());
  const double re = mean + sd * rng.normal();
  const double im = mean + sd * rng.normal();
  return {re, im};
}

}  // namespace ndnoma
