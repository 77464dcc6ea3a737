#pragma once

#include <stdexcept>
#include <string>

namespace mfhxa {

// Base of every error raised by the library. The CLI maps any of these to a
// nonzero exit status with the message on stderr.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class LagTooLargeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

// Raised when a scaling function contains K = 0 inside the fit window.
class DegenerateScalingError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfhxa
