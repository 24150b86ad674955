#pragma once

#include <stdexcept>
#include <string>

namespace catqfi {

// Base for all library errors. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric / domain failures (exit code 3).
class NumericError : public Error {
 public:
  using Error::Error;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Cat-state normalization vanishes (|xi| -> 1 for HHG, alpha -> 0 for odd).
class DegenerateCat : public NumericError {
 public:
  using NumericError::NumericError;
};

class NoBracket : public NumericError {
 public:
  using NumericError::NumericError;
};

class IllConditionedGram : public NumericError {
 public:
  using NumericError::NumericError;
};

class EmptySupport : public NumericError {
 public:
  using NumericError::NumericError;
};

class TruncationError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Bad configuration file or command-line flag (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Output could not be written (exit code 4).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace catqfi
