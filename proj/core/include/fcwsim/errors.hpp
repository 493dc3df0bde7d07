#pragma once

#include <stdexcept>
#include <string>

namespace fcwsim {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration value (PER outside [0,1], empty range, t_s <= 0, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input file: bad header, non-finite value, non-uniform sampling.
class ParseError : public Error {
 public:
  using Error::Error;
};

// API misuse: predicting an uninitialized estimator, mismatched lengths.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Non-finite or otherwise out-of-domain numeric argument.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace fcwsim
