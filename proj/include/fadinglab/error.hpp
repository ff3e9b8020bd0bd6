#pragma once

#include <stdexcept>
#include <string>

namespace fadinglab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON, grid strings, weight files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A channel or coefficient set breaks one of its admissibility constraints.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a numerical routine.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// MGF evaluated on top of one of its poles.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A series or iterative scheme hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// No Monte Carlo sampler exists for the requested channel.
class UnsupportedSampler : public Error {
 public:
  using Error::Error;
};

}  // namespace fadinglab
