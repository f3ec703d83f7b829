#pragma once

#include <stdexcept>
#include <string>

namespace wigswap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied input: bad parameters, malformed configs, bad patterns.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Mode bookkeeping failures (double allocation, unknown modes).
class ModeError : public Error {
 public:
  using Error::Error;
};

/// Two field expressions with different carrier frequencies were combined.
class FrequencyMismatch : public Error {
 public:
  using Error::Error;
};

/// The library detected a violated internal invariant, e.g. a probability
/// that came out negative beyond rounding or an indefinite covariance.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A Bell outcome has no local correction (the ambiguous/null classes).
class CorrectionUnavailable : public Error {
 public:
  using Error::Error;
};

}  // namespace wigswap
