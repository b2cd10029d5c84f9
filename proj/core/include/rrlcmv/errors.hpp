#pragma once

#include <stdexcept>
#include <string>

namespace rrlcmv {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (e.g. len(w) != dim(R)).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Singular or non-Hermitian input, or a non-finite intermediate value.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Invalid scenario, hyperparameter, or CLI configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace rrlcmv
