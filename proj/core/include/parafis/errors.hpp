#pragma once

#include <stdexcept>
#include <string>

namespace parafis {

// Base of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Covariance matrix is not usable even after floor regularization.
class DegenerateCovarianceError : public Error {
 public:
  using Error::Error;
};

// Operation needs at least one rule.
class EmptyModelError : public Error {
 public:
  using Error::Error;
};

// Vector or matrix shape does not match the owning model.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; the message names the offending line.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or hyperparameter values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Drift trace cannot be applied to the stream being replayed.
class TraceMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace parafis
