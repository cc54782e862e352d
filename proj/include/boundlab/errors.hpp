#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace boundlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or missing configuration. CLI exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input files, shape mismatches. CLI exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public DataError {
 public:
  using DataError::DataError;
};

// NaNs, blowups, divergence. CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DynamicsBlowup : public NumericalError {
 public:
  explicit DynamicsBlowup(std::uint64_t step)
      : NumericalError("dynamics blowup at step " + std::to_string(step)), step_index(step) {}
  std::uint64_t step_index;
};

}  // namespace boundlab
