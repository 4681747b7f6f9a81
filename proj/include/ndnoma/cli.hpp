#pragma once

#include <iosfwd>

namespace ndnoma::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitConfigError = 2;

/// Subcommands: sweep <config> --out <csv>, point, validate, selftest-determinism.
/// Returns 0 on success, 2 on a usage or configuration error, 1 otherwise.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ndnoma::harness
