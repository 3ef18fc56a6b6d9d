#pragma once

#include <stdexcept>
#include <string>

namespace lcam {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector length mismatch between parameters, gradients or state buffers.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf where a finite value is required.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration value or malformed config file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed dataset or trace contents.
class DataError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failure; message carries the path and OS cause.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lcam
