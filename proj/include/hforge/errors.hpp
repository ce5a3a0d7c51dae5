#pragma once

#include <stdexcept>
#include <string>

namespace hforge {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A truncation could not reach the requested tolerance within the term cap.
class ToleranceUnreachable : public Error {
 public:
  using Error::Error;
};

/// Kernel offset and sequence start index disagree.
class IndexMismatch : public Error {
 public:
  using Error::Error;
};

/// Endpoint exponent analysis shows the integral is infinite.
class DivergenceDetected : public Error {
 public:
  using Error::Error;
};

/// Malformed or invalid suite configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hforge
