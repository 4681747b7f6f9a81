#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ndnoma/rng.hpp"

namespace ndnoma {

using ComplexSample = std::complex<double>;
using Frame = std::vector<ComplexSample>;

/// Per-sample covariance of (Re y, Im y): var_re, var_im and their covariance.
struct SecondOrderStats {
  double var_re = 0.0;
  double var_im = 0.0;
  double cov = 0.0;
};

/// Gaussian (CLT) summary of the sample-variance statistic.
struct QuadFormMoments {
  double mean = 0.0;
  double var = 0.0;

  double stddev() const;
};

/// Fills `out` with i.i.d. N(mean, variance) draws.
void fill_real_gaussian(double mean, double variance, std::span<double> out, StreamRng& rng);
std::vector<double> draw_real_gaussian(double mean, double variance, std::size_t n,
                                       StreamRng& rng);

/// Adds i.i.d. CN(0, variance) noise to every sample (variance/2 per component).
void add_complex_noise(double variance, std::span<ComplexSample> frame, StreamRng& rng);

ComplexSample sample_mean(std::span<const ComplexSample> frame);

/// Unbiased sample variance (1/(N-1)) sum |y - ybar|^2.
double sample_variance(std::span<const ComplexSample> frame);

/// Gaussian tail probability Q(x) = P(Z > x).
double q_function(double x);

/// Mean and variance of (1/(N-1)) sum_n |y_n - E y_n|^2 for N i.i.d. pairs with
/// the given second-order statistics.
QuadFormMoments quadform_moments(const SecondOrderStats& stats, std::size_t n);

/// Threshold between two variance hypotheses that equalises both error terms.
double equal_error_threshold(const QuadFormMoments& bit0, const QuadFormMoments& bit1);

/// Error probability of the rule "decide 1 iff statistic > threshold" with
/// equiprobable hypotheses.
double variance_test_bep(const QuadFormMoments& bit0, const QuadFormMoments& bit1,
                         double threshold);

/// Same, evaluated at equal_error_threshold; reduces to
/// Q((mu1 - mu0) / (sigma0 + sigma1)).
double variance_test_bep(const QuadFormMoments& bit0, const QuadFormMoments& bit1);

/// Static scaled threshold chi such that gamma = chi * sigma_w^2.
double static_chi(double delta, double alpha);

}  // namespace ndnoma
