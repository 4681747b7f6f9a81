#include "ndnoma/stats.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ndnoma/errors.hpp"

namespace ndnoma {

double QuadFormMoments::stddev() const { return std::sqrt(var); }

void fill_real_gaussian(double mean, double variance, std::span<double> out, StreamRng& rng) {
  if (!(variance >= 0.0)) throw ParameterError("gaussian variance must be >= 0");
  const double sd = std::sqrt(variance);
  for (double& x : out) x = mean + sd * rng.normal();
}

std::vector<double> draw_real_gaussian(double mean, double variance, std::size_t n,
                                       StreamRng& rng) {
  if (n == 0) throw ParameterError("gaussian draw count must be >= 1");
  std::vector<double> out(n);
  fill_real_gaussian(mean, variance, out, rng);
  return out;
}

void add_complex_noise(double variance, std::span<ComplexSample> frame, StreamRng& rng) {
  if (!(variance >= 0.0)) throw ParameterError("noise variance must be >= 0");
  const double sd = std::sqrt(variance / 2.0);
  for (ComplexSample& y : frame) {
    const double re = rng.normal();
    const double im = rng.normal();
    y += ComplexSample(sd * re, sd * im);
  }
}

ComplexSample sample_mean(std::span<const ComplexSample> frame) {
  if (frame.empty()) throw ParameterError("sample_mean of an empty frame");
  ComplexSample sum{0.0, 0.0};
  for (const ComplexSample& y : frame) sum += y;
  return sum / static_cast<double>(frame.size());
}

double sample_variance(std::span<const ComplexSample> frame) {
  if (frame.size() < 2) throw ParameterError("sample_variance needs at least 2 samples");
  // Shift by the first sample so a constant frame gives exactly zero.
  const ComplexSample origin = frame.front();
  ComplexSample shift{0.0, 0.0};
  for (const ComplexSample& y : frame) shift += y - origin;
  shift /= static_cast<double>(frame.size());
  double acc = 0.0;
  for (const ComplexSample& y : frame) acc += std::norm((y - origin) - shift);
  return acc / static_cast<double>(frame.size() - 1);
}

double q_function(double x) {
  constexpr double kTail = 40.0;
  if (x > kTail) {
    // Asymptotic expansion phi(x)/x * (1 - 1/x^2 + 3/x^4 - 15/x^6).
    const double inv2 = 1.0 / (x * x);
    const double series = 1.0 - inv2 * (1.0 - 3.0 * inv2 * (1.0 - 5.0 * inv2));
    return std::exp(-0.5 * x * x) / (x * std::sqrt(2.0 * std::numbers::pi)) * series;
  }
  if (x < -kTail) return 1.0 - q_function(-x);
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

QuadFormMoments quadform_moments(const SecondOrderStats& s, std::size_t n) {
  if (n < 2) throw ParameterError("quadform_moments needs n >= 2");
  const double nn = static_cast<double>(n);
  const double dof = nn - 1.0;
  QuadFormMoments m;
  m.mean = nn * (s.var_re + s.var_im) / dof;
  m.var = 2.0 * nn * (s.var_re * s.var_re + s.var_im * s.var_im + 2.0 * s.cov * s.cov) /
          (dof * dof);
  return m;
}

double equal_error_threshold(const QuadFormMoments& bit0, const QuadFormMoments& bit1) {
  const double s0 = bit0.stddev();
  const double s1 = bit1.stddev();
  if (s0 + s1 == 0.0) return 0.5 * (bit0.mean + bit1.mean);
  return (s0 * bit1.mean + s1 * bit0.mean) / (s0 + s1);
}

namespace {

// Q((a - b) / s) with the s = 0 limit taken as a hard decision.
double q_ratio(double num, double den) {
  if (den > 0.0) return q_function(num / den);
  if (num > 0.0) return 0.0;
  if (num < 0.0) return 1.0;
  return 0.5;
}

}  // namespace

double variance_test_bep(const QuadFormMoments& bit0, const QuadFormMoments& bit1,
                         double threshold) {
  return 0.5 * q_ratio(threshold - bit0.mean, bit0.stddev()) +
         0.5 * q_ratio(bit1.mean - threshold, bit1.stddev());
}

double variance_test_bep(const QuadFormMoments& bit0, const QuadFormMoments& bit1) {
  return q_ratio(bit1.mean - bit0.mean, bit0.stddev() + bit1.stddev());
}

double static_chi(double delta, double alpha) {
  return 2.0 * (1.0 + delta) * (1.0 + alpha * delta) / (2.0 + delta * (1.0 + alpha));
}

}  // namespace ndnoma
