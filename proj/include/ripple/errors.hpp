#pragma once

#include <stdexcept>
#include <string>

namespace ripple {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative order, B <= 0, NaN input).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Argument combination the implementation deliberately does not handle.
class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

/// A quadrature or series failed to meet its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A spectral expansion hit its level cap before capturing the requested weight.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Coefficient profile with no weight on either branch.
class DegenerateProfile : public Error {
 public:
  using Error::Error;
};

/// Sampled data too coarse for the requested feature extraction.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Trace variance too small to define an oscillation period.
class FlatTrace : public Error {
 public:
  using Error::Error;
};

}  // namespace ripple
