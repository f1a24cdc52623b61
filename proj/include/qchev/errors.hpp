#pragma once

#include <stdexcept>
#include <string>

namespace qchev {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown Cartan type, bad rank, malformed configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (wrong weight, wrong module).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A denominator vanished at the requested point.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Substitution that would need an irrational power of a rational number.
class UnsupportedEvaluation : public Error {
 public:
  using Error::Error;
};

/// The requested expectation value does not come from any intertwiner.
class NoIntertwiner : public Error {
 public:
  using Error::Error;
};

/// A Verma-module solve that should be unique was not.
class GenericityError : public Error {
 public:
  using Error::Error;
};

/// Truncated Verma module too shallow for the requested vector.
class DepthError : public Error {
 public:
  using Error::Error;
};

/// Input failed parsing or schema validation.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency assertion failed. Either a bug or a counterexample
/// to the characterization of trace functions; never expected to fire.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace qchev
