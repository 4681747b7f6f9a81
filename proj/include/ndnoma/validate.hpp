#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ndnoma::harness {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  int workers = 0;
  std::size_t quadform_frames = 1000000;
  std::size_t channel_draws = 100000;
  std::size_t integrator_points = 100000;
};

// Individual checks, usable on their own.
CheckResult check_quadform_moments(const SuiteOptions& opt);
CheckResult check_threshold_identity(const SuiteOptions& opt);
CheckResult check_channel_unit_gain(const SuiteOptions& opt);
CheckResult check_integrator_constant(const SuiteOptions& opt);
CheckResult check_integrator_scaling(const SuiteOptions& opt);
CheckResult check_q_function(const SuiteOptions& opt);
CheckResult check_parallel_matches_serial(const SuiteOptions& opt);

/// Everything above, in that order.
std::vector<CheckResult> run_invariant_suite(const SuiteOptions& opt);

}  // namespace ndnoma::harness
