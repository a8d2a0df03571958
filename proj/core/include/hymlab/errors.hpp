#pragma once

#include <stdexcept>
#include <string>

namespace hymlab {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejected input: bad parameters, unsupported combinations, malformed configs.
// The message names the offending field and the accepted range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Numerical breakdown at runtime: positivity loss, ill-conditioned inversion,
// non-self-adjoint data where self-adjointness is required.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hymlab
