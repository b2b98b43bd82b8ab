#pragma once

#include <stdexcept>
#include <string>

namespace mixrobust {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (x <= 0, empty sample,
/// a sample point without mass under the reference law, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Model parameters violate a precondition (non-causal ARMA, a_0 == 0,
/// truncation budget exceeded, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A law is outside the metric's domain, e.g. an infinite gauge moment.
class NotInClassError : public Error {
 public:
  using Error::Error;
};

/// A value object was constructed with inconsistent data.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration or CLI input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mixrobust
