#pragma once

#include <stdexcept>

namespace ndnoma {

/// Out-of-range or inconsistent argument passed to a library operation.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed configuration file or command line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical invariant that cannot fail for valid inputs did fail.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ndnoma
